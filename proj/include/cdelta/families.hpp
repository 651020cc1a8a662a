#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cdelta/graph.hpp"

namespace cdelta {

struct SeifertSpec {
    Int k;
    std::vector<std::pair<Int, Int>> legs;

    std::string text() const;
};

/// Three-legged Seifert data with 2 <= d_i <= dmax, sum 1/d_i > 1,
/// kmin <= k <= kmax and e < 0. Legs are taken as a sorted multiset, so each
/// graph appears once.
std::vector<SeifertSpec> quotient_seifert_family(long dmax, long kmin, long kmax);

/// All d/q with 2 <= d <= dmax, 0 < q < d, gcd(d, q) = 1.
std::vector<std::pair<Int, Int>> cyclic_family(long dmax);

/// Center -k with k legs of a single (-2)-vertex.
DualGraph nonquotient_star(long k);

struct RandomGraphOptions {
    std::size_t count = 50;
    std::uint64_t seed = 1;
    std::size_t max_vertices = 7;
    long max_det = 60;
};

/// Seeded sample of rational graphs with |det M| <= max_det. Roughly a
/// fifth are strings, half are star-shaped and the rest have two or more
/// nodes; all are distinct.
std::vector<DualGraph> random_rational_graphs(const RandomGraphOptions& opt);

} // namespace cdelta
