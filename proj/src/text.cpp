#include "qwalk/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace qwalk {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

long long parse_integer(std::string_view s, std::string_view whole) {
    long long v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    if (!s.empty() && *b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e || b == e)
        throw InvalidParameter("malformed pi fraction '" + std::string(whole) + "'");
    return v;
}

}  // namespace

double parse_real(std::string_view text) {
    auto s = trim(text);
    const char* b = s.data();
    const char* e = b + s.size();
    if (!s.empty() && *b == '+') ++b;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e || b == e || !std::isfinite(v))
        throw InvalidParameter("malformed number '" + std::string(text) + "'");
    return v;
}

double parse_pi_fraction(std::string_view text) {
    auto s = trim(text);
    const auto slash = s.find('/');
    const long long p = parse_integer(trim(s.substr(0, slash)), text);
    long long q = 1;
    if (slash != std::string_view::npos) q = parse_integer(trim(s.substr(slash + 1)), text);
    if (q <= 0) throw InvalidParameter("pi fraction denominator must be positive");
    return static_cast<double>(p) / static_cast<double>(q) * kPi;
}

complex parse_complex(std::string_view text) {
    auto s = trim(text);
    if (s.empty()) throw InvalidParameter("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};

    s.remove_suffix(1);
    // Split at the last sign that is not the leading sign or part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_of = [&](std::string_view part) -> double {
        part = trim(part);
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return parse_real(part);
    };
    if (split == std::string_view::npos) return {0.0, imag_of(s)};
    return {parse_real(s.substr(0, split)), imag_of(s.substr(split))};
}

std::string format_real(double value) {
    std::array<char, 40> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

std::string format_complex(complex value) {
    std::string out = format_real(value.real());
    const double im = value.imag();
    if (!std::signbit(im)) out += '+';
    out += format_real(im);
    out += 'i';
    return out;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf.data(), 16);
}

}  // namespace qwalk
