#pragma once

// Locale-independent number formatting for reports and config files.

#include <string>

namespace moledrill {

/// Fixed notation with `precision` fractional digits. Negative zero prints as zero.
std::string format_fixed(double value, int precision);

/// Shortest text that parses back to the same double.
std::string format_roundtrip(double value);

/// Strict full-string parse; throws std::invalid_argument on trailing junk or no digits.
double parse_double(const std::string& text);

}  // namespace moledrill
