#pragma once

// Locale-independent parsing and formatting for CLI flags and data files.

#include <cstdint>
#include <string>
#include <string_view>

#include "qwalk/core.hpp"

namespace qwalk {

// Parses a decimal number with std::from_chars; the whole string must match.
double parse_real(std::string_view text);

// "p/q" or "p" with integer p, q > 0, returned as (p/q) * pi.
double parse_pi_fraction(std::string_view text);

// "a+bi", "a-bi", "a", "bi", "i", "-i" with optional exponents.
complex parse_complex(std::string_view text);

// Shortest round-trip is not used: always 17 significant digits.
std::string format_real(double value);

std::string format_complex(complex value);

// FNV-1a 64-bit digest, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace qwalk
