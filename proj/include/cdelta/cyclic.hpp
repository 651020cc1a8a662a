#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cdelta/arith.hpp"

namespace cdelta {

/// Hirzebruch-Jung data of d/q = [k_1, ..., k_s] together with the
/// subdeterminants d_{ij} of the string with self-intersections -k_i.
class HJData {
public:
    HJData() = default;

    const Int& d() const noexcept { return d_; }
    const Int& q() const noexcept { return q_; }
    /// q q' = 1 mod d, 0 < q' < d (q' = 1 when d = 1 is impossible here).
    const Int& q_prime() const noexcept { return q_prime_; }
    const std::vector<Int>& ks() const noexcept { return ks_; }
    std::size_t length() const noexcept { return ks_.size(); }

    /// d_{ij} with 1-based indices; d_{i,i-1} = 1 and d_{ij} = 0 for j < i - 1.
    Int subdet(std::size_t i, std::size_t j) const;

private:
    friend HJData hj_from_chain(std::vector<Int> ks);

    Int d_;
    Int q_;
    Int q_prime_;
    std::vector<Int> ks_;
    // table_[i][j] = d_{ij} for 1 <= i <= s + 2, 0 <= j <= s
    std::vector<std::vector<Int>> table_;
};

/// Negative continued fraction k_1 - 1/(k_2 - 1/(...)).
Rat evaluate_continued_fraction(std::span<const Int> ks);

/// Throws BadFraction unless 0 < q < d and gcd(d, q) = 1.
HJData hj_expand(const Int& d, const Int& q);

/// Builds the data from a chain of self-intersection magnitudes, all >= 2.
HJData hj_from_chain(std::vector<Int> ks);

/// E*-coefficients (a_1..a_s) of the minimal cycle of the class a[E*_s].
/// Requires 0 <= a < d, otherwise OutOfRange.
std::vector<Int> cyclic_s_coeffs(const HJData& hj, const Int& a);

/// Delta invariant of the minimal generic curve of class a[E*_s],
/// 0 < a < d. Throws EmptyCurve for a = 0.
Int cyclic_delta(const HJData& hj, const Int& a);

namespace detail {

/// Closed form of chi(s_{a[E*_s]}) on the string: a(1-d)/(2d) + sum_{i<=a} {i q'/d}.
Rat chi_minimal_cycle_closed_form(const HJData& hj, const Int& a);

} // namespace detail

} // namespace cdelta
