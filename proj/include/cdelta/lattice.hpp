#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdelta/arith.hpp"
#include "cdelta/graph.hpp"
#include "cdelta/matrix.hpp"

namespace cdelta {

/// Element of L_Q stored by its E-coefficients in vertex order.
class Cycle {
public:
    Cycle() = default;
    explicit Cycle(std::vector<Rat> e_coeffs) : coeffs_(std::move(e_coeffs)) {}

    static Cycle zero(std::size_t n) { return Cycle(std::vector<Rat>(n)); }

    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<Rat>& coeffs() const noexcept { return coeffs_; }
    const Rat& operator[](std::size_t v) const { return coeffs_[v]; }
    void set(std::size_t v, Rat value) { coeffs_.at(v) = std::move(value); }

    bool is_zero() const;
    /// All E-coefficients are integers, i.e. the cycle lies in L.
    bool is_integral() const;

    Cycle& operator+=(const Cycle& o);
    Cycle& operator-=(const Cycle& o);
    Cycle& operator*=(const Rat& f);

    friend Cycle operator+(Cycle a, const Cycle& b) { return a += b; }
    friend Cycle operator-(Cycle a, const Cycle& b) { return a -= b; }
    friend Cycle operator-(Cycle a) { return a *= Rat(-1); }
    friend Cycle operator*(const Rat& f, Cycle a) { return a *= f; }
    friend bool operator==(const Cycle& a, const Cycle& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<Rat> coeffs_;
};

/// Coordinatewise a >= b.
bool geq(const Cycle& a, const Cycle& b);
Cycle cwise_min(const Cycle& a, const Cycle& b);
std::string to_string(const Cycle& c);

/// Element of H = L'/L as residues modulo the invariant factors.
using HElem = std::vector<std::int64_t>;

/// H = L'/L from the Smith form of the intersection matrix. For cyclic H
/// the single residue is the multiple of a distinguished generator [E*_g].
class DiscriminantGroup {
public:
    DiscriminantGroup() = default;
    DiscriminantGroup(const IntMatrix& m, const std::vector<int>& preferred_generators);

    std::int64_t order() const noexcept { return order_; }
    /// Nontrivial invariant factors, each dividing the next.
    const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
    const std::vector<Int>& elementary_divisors() const noexcept { return divisors_; }
    bool is_cyclic() const noexcept { return moduli_.size() <= 1; }
    std::optional<int> generator_vertex() const noexcept { return generator_; }

    HElem zero() const { return HElem(moduli_.size(), 0); }
    bool is_zero(const HElem& h) const;
    HElem add(const HElem& a, const HElem& b) const;
    HElem negate(const HElem& a) const;
    HElem scale(const HElem& a, std::int64_t k) const;

    /// Class of the L'-element with the given E*-coordinates.
    HElem class_of_estar(const std::vector<Int>& c) const;
    /// An L'-representative in E*-coordinates.
    std::vector<Int> lift(const HElem& h) const;

    /// All elements, lexicographic in the residue tuple; zero first.
    std::vector<HElem> elements() const;
    std::size_t index_of(const HElem& h) const;

    /// "a" for cyclic groups, "(a,b,...)" otherwise.
    std::string format(const HElem& h) const;
    /// Inverse of format; also accepts "a,b" without parentheses.
    HElem parse(std::string_view text) const;

private:
    HElem reduce(HElem h) const;

    std::int64_t order_ = 1;
    std::vector<Int> divisors_;
    std::vector<std::int64_t> moduli_;
    IntMatrix projection_;
    std::vector<std::vector<Int>> lifts_;
    std::optional<int> generator_;
};

/// Lattices L and L' of a dual graph with the intersection form, H, Z_K and chi.
/// Immutable after construction.
class Lattice {
public:
    explicit Lattice(DualGraph g);

    const DualGraph& graph() const noexcept { return graph_; }
    std::size_t size() const noexcept { return graph_.size(); }
    const IntMatrix& intersection() const noexcept { return m_; }
    const RatMatrix& dual_inverse() const noexcept { return dual_inv_; }
    /// |det M| = |H|.
    const Int& det_abs() const noexcept { return det_abs_; }
    const DiscriminantGroup& group() const noexcept { return group_; }

    Cycle e(std::size_t v) const;
    Cycle estar(std::size_t v) const;
    /// E = sum of all E_v.
    Cycle e_total() const;

    Rat pairing(const Cycle& x, const Cycle& y) const;
    /// a_v = -(l, E_v): the coefficients of l in the E*-basis.
    std::vector<Rat> estar_coords_q(const Cycle& l) const;
    /// Integral E*-coordinates; throws NotInLPrime.
    std::vector<Int> estar_coords(const Cycle& l) const;
    Cycle from_estar(const std::vector<Int>& a) const;
    Cycle from_estar(const std::vector<Rat>& a) const;

    bool in_lprime(const Cycle& l) const;
    bool in_l(const Cycle& l) const { check(l); return l.is_integral(); }

    /// Throws NotInLPrime.
    HElem class_of(const Cycle& l) const;

    const Cycle& canonical_cycle() const noexcept { return zk_; }
    /// Z_K from the adjunction system (Z_K, E_v) = E_v^2 + 2.
    Cycle canonical_cycle_adjunction() const;
    /// Z_K = E - sum (2 - val_v) E*_v.
    Cycle canonical_cycle_valency() const;

    /// chi(l) = -(l, l - Z_K)/2.
    Rat chi(const Cycle& l) const;

    /// Unique class representative with E-coefficients in [0, 1).
    Cycle r_of(const HElem& h) const;
    std::vector<std::pair<HElem, Cycle>> enumerate_classes() const;

    /// Throws GraphMismatch if the cycle does not live on this graph.
    void check(const Cycle& l) const;

private:
    DualGraph graph_;
    IntMatrix m_;
    RatMatrix dual_inv_;
    Int det_abs_;
    DiscriminantGroup group_;
    Cycle zk_;
};

} // namespace cdelta
