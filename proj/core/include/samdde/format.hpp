#pragma once

#include <string>
#include <vector>

namespace samdde {

/// Parses "200", "16pi" or "0.5pi" into a double; the pi suffix keeps
/// multiples of pi exact to double precision (no decimal round-trip).
double parse_omega_token(const std::string& token);

/// Comma-separated list of omega tokens.
std::vector<double> parse_omega_list(const std::string& csv);

/// Comma-separated list of positive integers.
std::vector<int> parse_int_list(const std::string& csv);

/// Scientific notation, 6 significant digits ("1.23457e-04").
std::string format_sci(double x);

}  // namespace samdde
