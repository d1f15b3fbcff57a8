#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qineq {

/// printf-style %.{digits}g.
std::string format_number(double value, int significant_digits = 6);

/// Shortest decimal string that round-trips to the same double.
std::string shortest(double value);

/// Parses a finite double, rejecting trailing garbage.
double parse_double(std::string_view text);
unsigned long long parse_unsigned(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char delimiter);

/// Rounds to the given number of significant digits (for JSON output).
double round_significant(double value, int significant_digits);

}  // namespace qineq
