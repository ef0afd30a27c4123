/**
 * @file windows.hpp
 * @brief Piecewise-polynomial windows and their sampling.
 */
#pragma once

#include "gabordual/grid.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace gabordual {

/**
 * Piecewise cubic (or lower) function, zero outside
 * [breakpoints.front(), breakpoints.back()].
 *
 * pieces[i] holds c0..c3 of c0 + c1 x + c2 x^2 + c3 x^3 on
 * [breakpoints[i], breakpoints[i+1]); the last piece is closed on the right.
 */
struct PiecewiseWindow {
    std::vector<double> breakpoints;
    std::vector<std::array<double, 4>> pieces;

    PiecewiseWindow(std::vector<double> bps, std::vector<std::array<double, 4>> ps)
        : breakpoints(std::move(bps)), pieces(std::move(ps)) {
        if (breakpoints.size() < 2 || pieces.size() + 1 != breakpoints.size())
            throw std::invalid_argument("need n+1 breakpoints for n pieces");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i] > breakpoints[i - 1]))
                throw std::invalid_argument("breakpoints must be strictly increasing");
    }

    double support_lo() const { return breakpoints.front(); }
    double support_hi() const { return breakpoints.back(); }

    static double poly(const std::array<double, 4>& c, double x) {
        return c[0] + x * (c[1] + x * (c[2] + x * c[3]));
    }

    double operator()(double x) const {
        if (x < support_lo() || x > support_hi()) return 0.0;
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
            if (x < breakpoints[i + 1]) return poly(pieces[i], x);
        return poly(pieces.back(), x);
    }

    /// Limit from the left at x (0 at or left of the support start).
    double left_limit(double x) const {
        if (x <= support_lo() || x > support_hi()) return 0.0;
        for (std::size_t i = 0; i < pieces.size(); ++i)
            if (x <= breakpoints[i + 1]) return poly(pieces[i], x);
        return 0.0;
    }

    /// Limit from the right at x (0 at or right of the support end).
    double right_limit(double x) const {
        if (x < support_lo() || x >= support_hi()) return 0.0;
        for (std::size_t i = 0; i < pieces.size(); ++i)
            if (x < breakpoints[i + 1]) return poly(pieces[i], x);
        return 0.0;
    }

    /// Exact integral over the support.
    double integral() const {
        double total = 0.0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            auto prim = [&c = pieces[i]](double x) {
                return x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
            };
            total += prim(breakpoints[i + 1]) - prim(breakpoints[i]);
        }
        return total;
    }
};

/// Hat B-spline: x on [0,1), 2-x on [1,2].
inline PiecewiseWindow bspline2() {
    return PiecewiseWindow({0.0, 1.0, 2.0}, {{{0.0, 1.0, 0.0, 0.0}}, {{2.0, -1.0, 0.0, 0.0}}});
}

/// Dual window of the B2 Gabor system at a=1, b=1/3; support [-1,3], symmetric about 1.
inline PiecewiseWindow h2() {
    constexpr double third = 1.0 / 3.0;
    return PiecewiseWindow({-1.0, 0.0, 2.0, 3.0}, {{{third, third, 0.0, 0.0}},
                                                  {{third, 0.0, 0.0, 0.0}},
                                                  {{1.0, -third, 0.0, 0.0}}});
}

/**
 * Exact point evaluation on the grid points of the support.
 * Throws ShapeError if a breakpoint is not a grid point.
 */
inline SampledWindow sample(const PiecewiseWindow& pw, const GridSpec& grid) {
    for (double bp : pw.breakpoints) grid.index_of(bp);
    const long first = grid.index_of(pw.support_lo());
    const long last = grid.index_of(pw.support_hi());
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(last - first + 1));
    for (long i = first; i <= last; ++i) values.push_back(pw(grid.x(i)));
    return SampledWindow(grid, first, values);
}

} // namespace gabordual
