#pragma once

#include <string>

#include "cdelta/graph.hpp"
#include "cdelta/lattice.hpp"

namespace fixtures {

// Vertex order of the star shorthand: center 0, then each leg center-outward.
// E_{1,1}=1, E_{2,1}=2, E_{2,2}=3, E_{3,1}=4, E_{3,2}=5.
inline const std::string kExc1 = "sf:-2;(2,1),(3,2),(5,2)";
inline const std::string kExc2 = "sf:-2;(2,1),(3,2),(5,3)";
inline const std::string kNonQuotient = "sf:-4;(2,1),(2,1),(2,1),(2,1)";
inline const std::string kBrieskorn237 = "sf:-1;(2,1),(3,1),(7,1)";

inline cdelta::Lattice lattice(const std::string& text)
{
    return cdelta::Lattice(cdelta::parse_graph(text));
}

inline cdelta::HElem cls(std::int64_t a)
{
    return cdelta::HElem{a};
}

} // namespace fixtures
