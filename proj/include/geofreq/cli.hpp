#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geofreq/loop_ring.hpp"

namespace geofreq {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitVerdictFailure = 1, kExitInvalid = 2, kExitNumerical = 3 };

/// Parses and runs one command (args exclude the program name). The report
/// goes to `out` unless --output is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses labels such as "E", "A", "A*U^3", "W*Theta^2", "Theta".
Monomial parse_monomial(const RingSpec& ring, const std::string& text);

/// "Z", "Q" or a prime p.
CoefficientSpec parse_coefficients(const std::string& text);

}  // namespace geofreq
