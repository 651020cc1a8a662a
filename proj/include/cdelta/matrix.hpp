#pragma once

#include <cstddef>
#include <vector>

#include "cdelta/arith.hpp"

namespace cdelta {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            c[i] = (*this)(i, j);
        }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix& m);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
std::vector<Rat> multiply(const RatMatrix& a, const std::vector<Rat>& x);
std::vector<Int> multiply(const IntMatrix& a, const std::vector<Int>& x);

/// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix& m);

/// Determinants of the k x k upper-left blocks, k = 1..n.
std::vector<Int> leading_principal_minors(const IntMatrix& m);

/// Exact inverse; throws SingularMatrix.
RatMatrix inverse(const RatMatrix& m);

/// left * m * right = diag(diagonal), left and right unimodular, each
/// diagonal entry non-negative and dividing the next.
struct SmithForm {
    std::vector<Int> diagonal;
    IntMatrix left;
};

SmithForm smith_normal_form(const IntMatrix& m);

} // namespace cdelta
