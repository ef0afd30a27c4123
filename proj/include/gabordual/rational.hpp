/**
 * @file rational.hpp
 * @brief Parsing of "p/q" or decimal strings into doubles.
 */
#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gabordual {

namespace detail {
inline double parse_real(std::string_view s, std::string_view whole) {
    // std::from_chars for double is available in libstdc++ >= 11
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
    return value;
}
} // namespace detail

/// Parses "1/3", "2/7", "0.25" or "1e-1". A zero denominator is rejected.
inline double parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return detail::parse_real(text, text);
    double num = detail::parse_real(text.substr(0, slash), text);
    double den = detail::parse_real(text.substr(slash + 1), text);
    if (den == 0.0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

} // namespace gabordual
