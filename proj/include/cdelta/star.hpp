#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdelta/cyclic.hpp"
#include "cdelta/lattice.hpp"

namespace cdelta {

struct Leg {
    Int d;
    Int q;
    HJData hj;
    std::vector<int> vertices; ///< center-outward
    int end() const { return vertices.back(); }
};

/// Normalized Seifert invariants (-k; (d_i, q_i)) of a star-shaped graph.
struct SeifertData {
    int center = 0;
    Int k;
    std::vector<Leg> legs;
    Rat e;     ///< -k + sum q_i/d_i
    Rat gamma; ///< (nu - 2 - sum 1/d_i)/|e|

    std::size_t nu() const noexcept { return legs.size(); }
};

/// Throws NotStarShaped unless the graph has exactly one node, and
/// NonMinimalLeg if a leg carries a (-1)-curve.
SeifertData seifert_from_graph(const DualGraph& g);

/// "sf:-k;(d1,q1),..." in leg order.
std::string render_seifert(const SeifertData& sd);

/// True if the two data agree up to a permutation of the legs.
bool same_seifert(const SeifertData& sd, const Int& k, std::vector<std::pair<Int, Int>> legs);

/// (c_0, c_1, ..., c_nu): c_0 E*_0 + sum c_i E*_i with E_i the leg ends.
struct ReducedCoeffs {
    std::vector<Int> c;

    friend bool operator==(const ReducedCoeffs&, const ReducedCoeffs&) = default;
};

std::string to_string(const ReducedCoeffs& rc);

/// Reduced transform of l in L'. Asserts that the class and the
/// E_0-coefficient are preserved.
ReducedCoeffs reduced_transform(const Lattice& lat, const SeifertData& sd, const Cycle& l);

/// (c_0 + sum c_i/d_i)/|e|.
Rat reduced_e0(const SeifertData& sd, const ReducedCoeffs& rc);

/// Cycle whose legs are the minimal string cycles of the classes c_i[E*_i].
/// Throws OutOfRange unless 0 <= c_i < d_i.
Cycle unreduce(const Lattice& lat, const SeifertData& sd, const ReducedCoeffs& rc);

/// N_c(n) = 1 + c_0 + k n - sum ceil((q_i n - c_i)/d_i).
Int n_func(const SeifertData& sd, const ReducedCoeffs& c, const Int& n);

/// R_a(t) = 1 + a_0 - k t + sum floor((q_i t + a_i)/d_i).
Int r_func(const SeifertData& sd, const ReducedCoeffs& a, const Int& t);

/// Box conditions together with R_a(t) <= 0 for t = 1..T, where beyond
/// T = ceil((1 + a_0 + sum a_i/d_i)/|e|) the inequality holds automatically.
bool is_minimal_reduced(const SeifertData& sd, const ReducedCoeffs& a);

/// a~ = (a_0 + nu - 2, a_1 - 1, ..., a_nu - 1).
ReducedCoeffs index_vector(const SeifertData& sd, const ReducedCoeffs& a);

struct StarDelta {
    Cycle s_h;
    Rat s_h0;
    Int r;
    ReducedCoeffs a;
    ReducedCoeffs a_tilde;
    /// (n, N_a~(n)) for ceil(-gamma - s_h0) <= n <= -1.
    std::vector<std::pair<Int, Int>> n_values;
    Int delta;
};

/// delta = r - 1 + sum over ceil(-gamma - s_h0) <= n <= -1 of max(0, N_a~(n)).
/// Throws NotRational, NotStarShaped, EmptyCurve (h = 0).
StarDelta delta_star(const Lattice& lat, const HElem& h);

/// chi(r_{-h}) - chi(s_{-h}). Throws NotRational.
Rat pc_Z(const Lattice& lat, const HElem& h);

/// delta = r - 1 + pc + sum over 1 + floor(-s_h0) <= n <= -1 of max(0, N_a~(n)).
/// Applies when -gamma - s_h0 <= floor(-s_h0), otherwise PreconditionFailed.
Int delta_star_alt(const Lattice& lat, const HElem& h);

/// Every E-coefficient of Z_K is below 1. On star-shaped graphs this is
/// checked against nu = 3 and sum 1/d_i > 1 (InternalInconsistency).
bool is_quotient(const Lattice& lat);

struct QuotientDelta {
    Int delta;
    Int r;
    int epsilon;
    std::string rule;
    std::string curve_type;
};

/// The case analysis for quotient singularities. The star formula (or the
/// string formula) is always evaluated as well and must agree.
/// Throws NotQuotient, EmptyCurve, InternalInconsistency.
QuotientDelta delta_quotient(const Lattice& lat, const HElem& h);

/// "R^{a}_{r}" with a = r - epsilon.
std::string curve_type(const Int& r, const Int& delta);

} // namespace cdelta
