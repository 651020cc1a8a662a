#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cdelta/lattice.hpp"

namespace cdelta {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// A monomial t^{l'} of Z(t) with l' = sum c_v E*_v.
struct SeriesEntry {
    std::vector<std::int64_t> exponents; ///< E*-coordinates c_v
    std::int64_t z;                      ///< nonzero coefficient z(l')
    HElem cls;
    std::vector<std::int64_t> scaled;    ///< |det M| times the E-coefficients of l'
};

/// Nonzero coefficients of Z(t) on {l' in S' : l' not >= bound}.
struct SeriesRegion {
    Cycle bound;
    std::vector<SeriesEntry> entries;
};

/// Per-lattice store of enumerated regions. A region computed for a bound
/// x' serves every query with bound x <= x'. Safe for concurrent use.
class RegionCache {
public:
    std::shared_ptr<const SeriesRegion> find_dominating(const Cycle& x) const;
    void insert(std::shared_ptr<const SeriesRegion> region);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::vector<std::shared_ptr<const SeriesRegion>> regions_;
};

struct SeriesOptions {
    std::uint64_t budget = kDefaultBudget;
    RegionCache* cache = nullptr;
};

/// Coefficients of prod_v (1 - t^{E*_v})^{val_v - 2} on the region bounded by x.
SeriesRegion z_coefficients(const Lattice& lat, const Cycle& x, const SeriesOptions& opt = {});

/// Q_h(x): sum of z(l') over [l'] = h, l' not >= x.
std::int64_t counting_Q(const Lattice& lat, const HElem& h, const Cycle& x, const SeriesOptions& opt = {});

/// Sum of z(l') over all l' not >= x, ignoring classes.
std::int64_t counting_total(const Lattice& lat, const Cycle& x, const SeriesOptions& opt = {});

/// Q_{h,I}(x): as counting_Q but comparing only the coordinates in I.
std::int64_t counting_Q_I(const Lattice& lat, const HElem& h, const std::vector<int>& I, const Cycle& x,
                          const SeriesOptions& opt = {});

/// j*: rewrite l' in the E*-basis of the parent and keep the basis
/// elements of vertices in the subgraph.
Cycle dual_project(const Lattice& parent, const Lattice& sub, const std::vector<int>& to_parent, const Cycle& l);

struct SurgeryTerm {
    std::vector<int> to_parent;
    HElem cls;
    Cycle projected;
    std::int64_t value;
};

struct SurgeryResult {
    std::int64_t lhs;
    std::int64_t q_I;
    std::vector<SurgeryTerm> terms;
    std::int64_t rhs;
    bool holds;
};

/// Both sides of Q_h(l') = Q_{h,I}(l') + sum_k Q^{Gamma_k}(j*_k l').
/// Requires a rational graph (NotRational).
SurgeryResult surgery_check(const Lattice& lat, const std::vector<int>& I, const Cycle& l,
                            const SeriesOptions& opt = {});

/// kappa(l'_C) = Q_{[Z_K + l'_C]}(Z_K + l'_C) on a rational graph.
std::int64_t kappa_top(const Lattice& lat, const Cycle& lc, const SeriesOptions& opt = {});

} // namespace cdelta
