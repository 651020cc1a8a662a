#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdelta {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_validation = 2,
    exit_inconsistency = 3,
};

class Lattice;
class Cycle;

/// Parses a cycle expression such as "Z_K+2E*_0+E" or "[1/2,1,0]" (E-basis).
/// Atoms: Z_K, Z_min, E, E_<v>, E*_<v>, each with an optional rational factor.
Cycle parse_cycle(const Lattice& lat, const std::string& text);

/// The command-line front end. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cdelta
