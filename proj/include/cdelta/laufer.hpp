#pragma once

#include <cstdint>
#include <vector>

#include "cdelta/lattice.hpp"

namespace cdelta {

/// One step x_{i+1} = x_i + E_v of a computation sequence.
struct LauferStep {
    Cycle cycle;  ///< x_i, before the step
    int vertex;   ///< v(i)
    Rat pairing;  ///< (x_i, E_{v(i)}), always > 0
};

using ComputationSequence = std::vector<LauferStep>;

enum class TieBreak { smallest_index, largest_index };

struct LauferResult {
    Cycle cycle;
    ComputationSequence sequence;
};

/// (l, E_v) <= 0 for every vertex.
bool is_anti_nef(const Lattice& lat, const Cycle& l);

/// Artin's fundamental cycle Z_min, by Laufer's sequence starting at E.
LauferResult fundamental_cycle(const Lattice& lat, TieBreak tie = TieBreak::smallest_index);

/// Laufer's criterion: every step of the sequence to Z_min pairs to 1.
/// Cross-checked against chi(Z_min) = 1; a disagreement throws
/// InternalInconsistency.
bool is_rational(const Lattice& lat);

/// Smallest s(l) in S' with s(l) - l in L_{>=0}. Throws NotInLPrime.
LauferResult s_of(const Lattice& lat, const Cycle& l, TieBreak tie = TieBreak::smallest_index);

/// s_h = s(r_h).
Cycle minimal_class_cycle(const Lattice& lat, const HElem& h);

/// All elements of S'_h lying coordinatewise below `upper`, found by
/// exhaustive enumeration of r_h + L_{>=0}. Throws RegionTooLarge when more
/// than `budget` candidates would be inspected.
std::vector<Cycle> class_cone_in_box(const Lattice& lat, const HElem& h, const Cycle& upper,
                                     std::uint64_t budget = 10'000'000);

/// Coordinatewise minimum of class_cone_in_box; empty box gives nullopt.
std::optional<Cycle> box_minimum(const Lattice& lat, const HElem& h, const Cycle& upper,
                                 std::uint64_t budget = 10'000'000);

} // namespace cdelta
