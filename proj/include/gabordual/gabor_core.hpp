/**
 * @file gabor_core.hpp
 * @brief Gabor systems {E_{mb} T_{na} g} with compactly supported sampled windows.
 *
 * Time-frequency shifts are exact index operations on the grid. The frame
 * operator is applied through the Walnut representation
 *
 *   S f(x) = (1/b) sum_k G_k(x) f(x - k/b),
 *   G_k(x) = sum_n g(x - na) conj(g(x - na - k/b)),
 *
 * where both sums are finite for compactly supported g and G_k has period a.
 */
#pragma once

#include "gabordual/duality_report.hpp"
#include "gabordual/errors.hpp"
#include "gabordual/finite_frames.hpp"
#include "gabordual/grid.hpp"
#include "gabordual/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace gabordual {

struct GaborSpec {
    SampledWindow window;
    double a = 1.0;
    double b = 1.0;

    LatticeSteps steps() const { return lattice_steps(window.grid(), a, b); }

    /// a*b <= 1 is necessary for a frame.
    bool density_ok() const { return a * b <= 1.0 + 1e-12; }
};

inline SampledWindow translate(const SampledWindow& w, double t) {
    const long shift = w.grid().index_of(t);
    return SampledWindow(w.grid(), w.first_index() + shift, w.samples());
}

inline SampledWindow modulate(const SampledWindow& w, double nu) {
    std::vector<complex> out(w.samples());
    for (long i = w.first_index(); i <= w.last_index(); ++i) {
        const double angle = 2.0 * std::numbers::pi * nu * w.x(i);
        out[static_cast<std::size_t>(i - w.first_index())] *= std::polar(1.0, angle);
    }
    return SampledWindow(w.grid(), w.first_index(), std::move(out));
}

namespace detail {

/// e^{2 pi i j x_i / period} with the phase reduced exactly in integers.
inline complex lattice_phase(long j, long i, long period) {
    long r = (j * i) % period;
    if (r < 0) r += period;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r)
                               / static_cast<double>(period));
}

inline long floor_div(long n, long d) {
    long q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return q;
}

inline long ceil_div(long n, long d) { return -floor_div(-n, d); }

inline long mod(long n, long m) {
    long r = n % m;
    return r < 0 ? r + m : r;
}

/// Simpson integral of u * conj(v) * weight(i) over the support intersection.
template <typename Weight>
complex weighted_inner(const SampledWindow& u, const SampledWindow& v, Weight&& weight) {
    u.require_same_grid(v, "inner_product");
    const long lo = std::max(u.first_index(), v.first_index());
    const long hi = std::min(u.last_index(), v.last_index());
    if (hi <= lo) return {};
    std::vector<complex> y;
    y.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long i = lo; i <= hi; ++i) y.push_back(u.at(i) * std::conj(v.at(i)) * weight(i));
    return simpson<complex>(y, u.step());
}

} // namespace detail

/// <u, v> = integral of u conj(v), composite Simpson over the support intersection.
inline complex inner_product(const SampledWindow& u, const SampledWindow& v) {
    return detail::weighted_inner(u, v, [](long) { return 1.0; });
}

inline double l2_norm(const SampledWindow& u) { return std::sqrt(std::max(0.0, inner_product(u, u).real())); }

/// <gd, E_{jb} T_{ka} g>.
inline complex gabor_coefficient(const SampledWindow& gd, const SampledWindow& g, long j, long k,
                                 double a, double b) {
    const LatticeSteps s = lattice_steps(g.grid(), a, b);
    const SampledWindow shifted(g.grid(), g.first_index() + k * s.a_steps, g.samples());
    // conj(E_{jb}) = e^{-2 pi i j b x}, applied to the conjugated factor
    return detail::weighted_inner(gd, shifted, [&](long i) {
        return std::conj(detail::lattice_phase(j, i, s.shift_steps));
    });
}

/// Offsets k for which x -> u(x) conj(v(x - k/b)) can be nonzero on the grid.
struct OffsetRange {
    long lo = 0;
    long hi = -1;
    bool empty() const { return hi < lo; }
};

inline OffsetRange correlation_offsets(const SampledWindow& u, const SampledWindow& v,
                                       long shift_steps) {
    return {detail::ceil_div(u.first_index() - v.last_index(), shift_steps),
            detail::floor_div(u.last_index() - v.first_index(), shift_steps)};
}

/**
 * Values of sum_n u(x - na) conj(v(x - na - k/b)) at the grid points
 * x = r h, r = 0 .. a_steps-1 (one period).
 */
inline std::vector<complex> lattice_correlation(const SampledWindow& u, const SampledWindow& v,
                                                double a, double b, long k) {
    u.require_same_grid(v, "lattice_correlation");
    const LatticeSteps s = lattice_steps(u.grid(), a, b);
    const long period = s.a_steps;
    std::vector<complex> out(static_cast<std::size_t>(period));
    for (long r = 0; r < period; ++r) {
        // indices i = r - n*period inside supp(u)
        const long n_lo = detail::ceil_div(r - u.last_index(), period);
        const long n_hi = detail::floor_div(r - u.first_index(), period);
        complex acc{};
        for (long n = n_lo; n <= n_hi; ++n) {
            const long i = r - n * period;
            acc += u.at(i) * std::conj(v.at(i - k * s.shift_steps));
        }
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

/// Value of the k-th lattice correlation at grid point x (any x, period a).
inline complex lattice_correlation_at(const SampledWindow& u, const SampledWindow& v, double a,
                                      double b, long k, double x) {
    const LatticeSteps s = lattice_steps(u.grid(), a, b);
    const auto corr = lattice_correlation(u, v, a, b, k);
    return corr[static_cast<std::size_t>(detail::mod(u.grid().index_of(x), s.a_steps))];
}

/**
 * S_G f via the Walnut representation. The result is supported on
 * supp(f) + [k_min, k_max]/b where k ranges over nonzero correlations of g.
 */
inline SampledWindow frame_operator_apply(const GaborSpec& spec, const SampledWindow& f) {
    const SampledWindow& g = spec.window;
    g.require_same_grid(f, "frame_operator_apply");
    const LatticeSteps s = spec.steps();
    const OffsetRange ks = correlation_offsets(g, g, s.shift_steps);

    std::vector<std::vector<complex>> corr;
    for (long k = ks.lo; k <= ks.hi; ++k) corr.push_back(lattice_correlation(g, g, spec.a, spec.b, k));

    auto out = SampledWindow::zeros(g.grid(), f.first_index() + ks.lo * s.shift_steps,
                                    f.last_index() + ks.hi * s.shift_steps);
    for (long i = out.first_index(); i <= out.last_index(); ++i) {
        complex acc{};
        const auto r = static_cast<std::size_t>(detail::mod(i, s.a_steps));
        for (long k = ks.lo; k <= ks.hi; ++k)
            acc += corr[static_cast<std::size_t>(k - ks.lo)][r] * f.at(i - k * s.shift_steps);
        out.ref(i) = acc / spec.b;
    }
    return out;
}

/**
 * Pointwise duality criterion
 *   sum_n g(x - na) conj(gd(x - na - k/b)) = b delta_{k0}
 * checked on the grid points of [0, a) for every k with overlapping supports.
 */
inline DualityReport duality_residual(const SampledWindow& g, const SampledWindow& gd, double a,
                                      double b, double tol = 1e-10) {
    const LatticeSteps s = lattice_steps(g.grid(), a, b);
    OffsetRange ks = correlation_offsets(g, gd, s.shift_steps);
    ks.lo = std::min(ks.lo, 0L);
    ks.hi = std::max(ks.hi, 0L);

    DualityReport report;
    report.tol = tol;
    for (long k = ks.lo; k <= ks.hi; ++k) {
        const double target = (k == 0) ? b : 0.0;
        double worst = 0.0;
        for (const auto& v : lattice_correlation(g, gd, a, b, k))
            worst = std::max(worst, std::abs(v - target));
        report.per_k_residuals[k] = worst;
        report.max_residual = std::max(report.max_residual, worst);
    }
    report.pass = report.max_residual < tol;
    return report;
}

/// Sufficient Bessel bound (1/b) sup_x sum_k |sum_n w(x-na) conj(w(x-na-k/b))|.
inline double bessel_bound(const SampledWindow& w, double a, double b) {
    const LatticeSteps s = lattice_steps(w.grid(), a, b);
    const OffsetRange ks = correlation_offsets(w, w, s.shift_steps);
    std::vector<double> row_sum(static_cast<std::size_t>(s.a_steps), 0.0);
    for (long k = ks.lo; k <= ks.hi; ++k) {
        const auto corr = lattice_correlation(w, w, a, b, k);
        for (std::size_t r = 0; r < corr.size(); ++r) row_sum[r] += std::abs(corr[r]);
    }
    double sup = 0.0;
    for (double v : row_sum) sup = std::max(sup, v);
    return sup / b;
}

/// Symbol frequencies sampled per residue when the Walnut matrix is not block diagonal.
inline constexpr int kSymbolSamples = 64;

/**
 * Frame-bound estimate from the spectrum of the Walnut matrix
 *   M_{jl}(x) = (1/b) G_{l-j}(x - j/b)
 * acting on the residue classes x + (1/b)Z.
 *
 * Since ab = p/q is rational on the grid, M is block Toeplitz with p x p
 * blocks; its spectrum is swept over the grid points of [0, a) and over
 * kSymbolSamples frequencies of the block symbol.
 * Throws NotAFrameError when the estimated lower bound is not positive.
 */
inline FrameBounds frame_bounds_estimate(const GaborSpec& spec) {
    const SampledWindow& g = spec.window;
    const LatticeSteps s = spec.steps();
    const long p = s.a_steps / std::gcd(s.a_steps, s.shift_steps);
    const OffsetRange ds = correlation_offsets(g, g, s.shift_steps);

    std::vector<std::vector<complex>> corr;
    for (long d = ds.lo; d <= ds.hi; ++d) corr.push_back(lattice_correlation(g, g, spec.a, spec.b, d));
    auto entry = [&](long r, long row, long d) -> complex {
        if (d < ds.lo || d > ds.hi) return {};
        const long res = detail::mod(r - row * s.shift_steps, s.a_steps);
        return corr[static_cast<std::size_t>(d - ds.lo)][static_cast<std::size_t>(res)] / spec.b;
    };

    // blocks B_m, (B_m)_{st} = M_{s, t + m p}
    const long m_lo = detail::floor_div(ds.lo - (p - 1), p);
    const long m_hi = detail::ceil_div(ds.hi + (p - 1), p);
    const bool banded = (m_lo < 0 || m_hi > 0);
    const int thetas = banded ? kSymbolSamples : 1;

    using Mat = Eigen::MatrixXcd;
    double lower = std::numeric_limits<double>::infinity();
    double upper = 0.0;
    for (long r = 0; r < s.a_steps; ++r) {
        for (int t = 0; t < thetas; ++t) {
            const double theta = static_cast<double>(t) / thetas;
            Mat symbol = Mat::Zero(p, p);
            for (long m = m_lo; m <= m_hi; ++m) {
                const complex phase = std::polar(1.0, 2.0 * std::numbers::pi * theta * static_cast<double>(m));
                for (long row = 0; row < p; ++row)
                    for (long col = 0; col < p; ++col)
                        symbol(row, col) += entry(r, row, col + m * p - row) * phase;
            }
            Eigen::SelfAdjointEigenSolver<Mat> eig(symbol, Eigen::EigenvaluesOnly);
            lower = std::min(lower, eig.eigenvalues().minCoeff());
            upper = std::max(upper, eig.eigenvalues().maxCoeff());
        }
    }
    if (!(lower > 1e-12 * upper))
        throw NotAFrameError("Gabor system not certified as a frame (estimated lower bound "
                             + std::to_string(lower) + ")");
    return {lower, upper};
}

} // namespace gabordual
