#include "cdelta/matrix.hpp"

#include <utility>

#include "cdelta/error.hpp"

namespace cdelta {

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = Rat(m(i, j));
        }
    }
    return r;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b)
{
    RatMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                r(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return r;
}

std::vector<Rat> multiply(const RatMatrix& a, const std::vector<Rat>& x)
{
    std::vector<Rat> r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r[i] += a(i, j) * x[j];
        }
    }
    return r;
}

std::vector<Int> multiply(const IntMatrix& a, const std::vector<Int>& x)
{
    std::vector<Int> r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r[i] += a(i, j) * x[j];
        }
    }
    return r;
}

Int determinant(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 0) {
        return 1;
    }
    IntMatrix a = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) {
                ++p;
            }
            if (p == n) {
                return 0;
            }
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::vector<Int> leading_principal_minors(const IntMatrix& m)
{
    std::vector<Int> minors;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        IntMatrix block(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                block(i, j) = m(i, j);
            }
        }
        minors.push_back(determinant(block));
    }
    return minors;
}

RatMatrix inverse(const RatMatrix& m)
{
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) {
            ++p;
        }
        if (p == n) {
            throw SingularMatrix("matrix is not invertible");
        }
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(c, j), a(p, j));
                std::swap(inv(c, j), inv(p, j));
            }
        }
        const Rat pivot = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= pivot;
            inv(c, j) /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) {
                continue;
            }
            const Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j)
{
    for (std::size_t c = 0; c < a.cols(); ++c) {
        std::swap(a(i, c), a(j, c));
    }
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j)
{
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::swap(a(r, i), a(r, j));
    }
}

// row_i += f * row_j
void add_row(IntMatrix& a, std::size_t i, std::size_t j, const Int& f)
{
    for (std::size_t c = 0; c < a.cols(); ++c) {
        a(i, c) += f * a(j, c);
    }
}

void add_col(IntMatrix& a, std::size_t i, std::size_t j, const Int& f)
{
    for (std::size_t r = 0; r < a.rows(); ++r) {
        a(r, i) += f * a(r, j);
    }
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    IntMatrix a = m;
    IntMatrix left = IntMatrix::identity(m.rows());
    const std::size_t n = std::min(m.rows(), m.cols());
    std::vector<Int> diag;

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            bool found = false;
            std::size_t pi = t;
            std::size_t pj = t;
            for (std::size_t i = t; i < a.rows(); ++i) {
                for (std::size_t j = t; j < a.cols(); ++j) {
                    if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
                        found = true;
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (!found) {
                break;
            }
            if (pi != t) {
                swap_rows(a, t, pi);
                swap_rows(left, t, pi);
            }
            if (pj != t) {
                swap_cols(a, t, pj);
            }

            bool clean = true;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0) {
                    continue;
                }
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                add_row(a, i, t, -q);
                add_row(left, i, t, -q);
                clean = clean && a(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0) {
                    continue;
                }
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                add_col(a, j, t, -q);
                clean = clean && a(t, j) == 0;
            }
            if (!clean) {
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < a.rows() && divides; ++i) {
                for (std::size_t j = t + 1; j < a.cols(); ++j) {
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        add_row(a, t, i, Int(1));
                        add_row(left, t, i, Int(1));
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) {
                break;
            }
        }
        if (a(t, t) < 0) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                a(t, c) = -a(t, c);
            }
            for (std::size_t c = 0; c < left.cols(); ++c) {
                left(t, c) = -left(t, c);
            }
        }
        diag.push_back(a(t, t));
    }
    return SmithForm{std::move(diag), std::move(left)};
}

} // namespace cdelta
