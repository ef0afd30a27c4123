/**
 * @file quadrature.hpp
 * @brief Composite Newton-Cotes rules on equispaced samples.
 */
#pragma once

#include <cstddef>
#include <span>

namespace gabordual {

/**
 * Composite Simpson rule over y[0..n] with spacing h.
 *
 * Panels start at y[0]. For an odd number of intervals the last three are
 * integrated with Simpson's 3/8 rule; a single interval falls back to the
 * trapezoid rule. Exact for piecewise quadratics whose breakpoints fall on
 * even sample offsets.
 */
template <typename T>
T simpson(std::span<const T> y, double h) {
    const std::size_t n = y.empty() ? 0 : y.size() - 1;
    if (n == 0) return T{};
    if (n == 1) return (y[0] + y[1]) * (h / 2.0);

    const std::size_t even_end = (n % 2 == 0) ? n : n - 3;
    T sum{};
    if (even_end > 0) {
        T odd{}, even{};
        for (std::size_t i = 1; i < even_end; i += 2) odd += y[i];
        for (std::size_t i = 2; i < even_end; i += 2) even += y[i];
        sum = (y[0] + y[even_end] + 4.0 * odd + 2.0 * even) * (h / 3.0);
    }
    if (even_end != n) {
        const std::size_t s = even_end;
        sum += (y[s] + 3.0 * y[s + 1] + 3.0 * y[s + 2] + y[s + 3]) * (3.0 * h / 8.0);
    }
    return sum;
}

} // namespace gabordual
