#pragma once

// Configuration files:
//   {"field": "rational" | "fp:<prime>" | "gaussian_rational", "d": <int>,
//    "points": [["p/q", "p/q"], ...],
//    "curves": [{"<i>,<j>": "<coeff>", ...}, ...]}
// Numbers are exact strings ("p/q", or "p/q+r/s i" in Q(i)); integers are also accepted.
// Curve keys are exponent pairs with i + j <= d.

#include <string>

#include "incidence/generators.hpp"

namespace incidence {

/// Throws ParseError (with line and column for JSON syntax errors).
AnyConfiguration parse_configuration(const std::string& text);
AnyConfiguration read_configuration_file(const std::string& path);

/// Deterministic text: same configuration, same bytes.
std::string write_configuration(const AnyConfiguration& cfg);
void write_configuration_file(const AnyConfiguration& cfg, const std::string& path);

/// 1-based line and column of a byte offset in text.
std::pair<int, int> line_column(const std::string& text, std::size_t offset);

/// Reads a whole file; throws InvalidInput when it cannot be opened.
std::string read_text_file(const std::string& path);
/// Throws InvalidInput when the destination is not writable.
void write_text_file(const std::string& path, const std::string& text);

} // namespace incidence
