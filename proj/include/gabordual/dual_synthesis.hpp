/**
 * @file dual_synthesis.hpp
 * @brief Compactly supported dual windows of a Gabor frame.
 *
 * Given a compactly supported dual window gd of the Gabor frame generated by
 * g, every compactly supported dual window has the form
 *
 *   phi = gd + w - sum_{k in K} sum_{j in Z} <gd, E_{jb} T_{ka} g> E_{jb} T_{ka} w
 *
 * with w compactly supported and bounded, and K the finite set of offsets for
 * which the coefficients can be nonzero. The j-sum is truncated to |j| <= J.
 */
#pragma once

#include "gabordual/errors.hpp"
#include "gabordual/gabor_core.hpp"
#include "gabordual/grid.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gabordual {

/// Duality tolerance a starting window must meet.
inline constexpr double kWindowDualTolerance = 1e-8;

struct OverlapSet {
    std::vector<long> ks;                  ///< offsets with a nonzero coefficient
    std::vector<long> support_candidates;  ///< offsets passing the support test
};

/**
 * K = { k : supp(gd) and supp(g) + ka overlap on an interval of positive length,
 *           and max_{|j| <= j_scan} |<gd, E_{jb} T_{ka} g>| > zero_tol }.
 */
inline OverlapSet overlap_set_K(const SampledWindow& g, const SampledWindow& gd, double a, double b,
                                double zero_tol = 1e-12, long j_scan = 64) {
    const LatticeSteps s = lattice_steps(g.grid(), a, b);
    OverlapSet out;
    // need max(d0, g0 + kA) < min(d1, g1 + kA)
    const long k_lo = detail::floor_div(gd.first_index() - g.last_index(), s.a_steps);
    const long k_hi = detail::ceil_div(gd.last_index() - g.first_index(), s.a_steps);
    for (long k = k_lo; k <= k_hi; ++k) {
        const long lo = std::max(gd.first_index(), g.first_index() + k * s.a_steps);
        const long hi = std::min(gd.last_index(), g.last_index() + k * s.a_steps);
        if (hi <= lo) continue;
        out.support_candidates.push_back(k);
        for (long j = -j_scan; j <= j_scan; ++j) {
            if (std::abs(gabor_coefficient(gd, g, j, k, a, b)) > zero_tol) {
                out.ks.push_back(k);
                break;
            }
        }
    }
    return out;
}

struct GaborCoefficient {
    long j = 0;
    long k = 0;
    complex value;
};

/// <gd, E_{jb} T_{ka} g> for k in @p ks and |j| <= J, ordered by k then j.
inline std::vector<GaborCoefficient> coefficient_table(const SampledWindow& g,
                                                       const SampledWindow& gd, double a, double b,
                                                       const std::vector<long>& ks, long J) {
    std::vector<GaborCoefficient> table;
    table.reserve(ks.size() * static_cast<std::size_t>(2 * J + 1));
    for (long k : ks)
        for (long j = -J; j <= J; ++j) table.push_back({j, k, gabor_coefficient(gd, g, j, k, a, b)});
    return table;
}

/**
 * Energy sum_{|j| > J} |<gd, E_{jb} T_{ka} g>|^2 left out by truncation, from
 * Parseval on one period of the 1/b-periodization of gd conj(T_{ka} g)
 * minus the partial energy of the retained coefficients.
 */
inline double coefficient_tail(const SampledWindow& g, const SampledWindow& gd, double a, double b,
                               long k, const std::vector<GaborCoefficient>& table) {
    const LatticeSteps s = lattice_steps(g.grid(), a, b);
    const long L = s.shift_steps;
    std::vector<complex> periodic(static_cast<std::size_t>(L + 1));
    for (long i = gd.first_index(); i <= gd.last_index(); ++i) {
        const complex v = gd.at(i) * std::conj(g.at(i - k * s.a_steps));
        periodic[static_cast<std::size_t>(detail::mod(i, L))] += v;
    }
    periodic[static_cast<std::size_t>(L)] = periodic[0];
    std::vector<double> sq(periodic.size());
    for (std::size_t i = 0; i < periodic.size(); ++i) sq[i] = std::norm(periodic[i]);
    const double total = simpson<double>(sq, g.step()) / b;
    double partial = 0.0;
    for (const auto& c : table)
        if (c.k == k) partial += std::norm(c.value);
    return std::max(0.0, total - partial);
}

struct CompactDual {
    SampledWindow phi;
    OverlapSet K;
    std::vector<GaborCoefficient> coefficients;
    std::map<long, double> tail_energy;  ///< per k in K
};

namespace detail {

inline void require_dual_window(const SampledWindow& g, const SampledWindow& gd, double a, double b,
                                double tol) {
    const auto rep = duality_residual(g, gd, a, b, tol);
    if (!rep.pass)
        throw DualityError("window is not a dual window of the Gabor system (residual "
                           + std::to_string(rep.max_residual) + ", tolerance "
                           + std::to_string(tol) + ")");
}

inline SampledWindow dual_support_frame(const SampledWindow& gd, const SampledWindow& w,
                                        const std::vector<long>& ks, long a_steps) {
    long lo = std::min(gd.first_index(), w.first_index());
    long hi = std::max(gd.last_index(), w.last_index());
    for (long k : ks) {
        lo = std::min(lo, w.first_index() + k * a_steps);
        hi = std::max(hi, w.last_index() + k * a_steps);
    }
    return gd.widened(lo, hi);
}

} // namespace detail

/**
 * phi = gd + w - sum_{k in K} sum_{|j| <= J} <gd, E_{jb} T_{ka} g> E_{jb} T_{ka} w.
 *
 * Requires gd to pass the duality certificate at @p dual_tol. For real g, gd
 * and w the imaginary part cancels in conjugate pairs and is dropped.
 */
inline CompactDual compact_dual_construction(const SampledWindow& g, const SampledWindow& gd,
                                             double a, double b, const SampledWindow& w, long J,
                                             double dual_tol = kWindowDualTolerance) {
    if (J < 0) throw std::invalid_argument("J must be non-negative");
    detail::require_dual_window(g, gd, a, b, dual_tol);
    g.require_same_grid(w, "compact_dual");
    const LatticeSteps s = lattice_steps(g.grid(), a, b);

    CompactDual out;
    out.K = overlap_set_K(g, gd, a, b);
    out.coefficients = coefficient_table(g, gd, a, b, out.K.ks, J);
    for (long k : out.K.ks) out.tail_energy[k] = coefficient_tail(g, gd, a, b, k, out.coefficients);

    SampledWindow phi = detail::dual_support_frame(gd, w, out.K.ks, s.a_steps);
    phi += w;
    std::size_t c = 0;
    for (long k : out.K.ks) {
        const long shift = k * s.a_steps;
        for (long i = w.first_index() + shift; i <= w.last_index() + shift; ++i) {
            complex mult{};
            for (long j = -J; j <= J; ++j)
                mult += out.coefficients[c + static_cast<std::size_t>(j + J)].value
                        * detail::lattice_phase(j, i, s.shift_steps);
            phi.ref(i) -= mult * w.at(i - shift);
        }
        c += static_cast<std::size_t>(2 * J + 1);
    }
    if (g.is_real() && gd.is_real() && w.is_real() && phi.max_abs_imag() < 1e-12)
        for (long i = phi.first_index(); i <= phi.last_index(); ++i) phi.ref(i) = phi.at(i).real();
    out.phi = std::move(phi);
    return out;
}

inline SampledWindow compact_dual(const SampledWindow& g, const SampledWindow& gd, double a,
                                  double b, const SampledWindow& w, long J) {
    return compact_dual_construction(g, gd, a, b, w, J).phi;
}

struct PCoefficient {
    enum class Kind { Cos, Sin };
    long j = 0;
    long k = 0;
    Kind kind = Kind::Cos;
    double value = 0.0;
};

namespace detail {
inline void require_real(const SampledWindow& w, const char* name) {
    if (!w.is_real())
        throw std::invalid_argument(std::string(name) + " must be real-valued");
}
} // namespace detail

/**
 * value = integral of gd(x) f(2 pi j b x) g(x - ka) dx with f = cos or sin, so that
 * <gd, E_{jb} T_{ka} g> = value_cos - i value_sin.
 */
inline PCoefficient p_coefficient(const SampledWindow& gd, const SampledWindow& g, long j, long k,
                                  double a, double b, PCoefficient::Kind kind) {
    detail::require_real(gd, "gd");
    detail::require_real(g, "g");
    const LatticeSteps s = lattice_steps(g.grid(), a, b);
    const SampledWindow shifted(g.grid(), g.first_index() + k * s.a_steps, g.samples());
    const complex v = detail::weighted_inner(gd, shifted, [&](long i) {
        const complex e = detail::lattice_phase(j, i, s.shift_steps);
        return kind == PCoefficient::Kind::Cos ? e.real() : e.imag();
    });
    return {j, k, kind, v.real()};
}

/**
 * Real-arithmetic form of compact_dual for real g, gd, w:
 *   phi = gd + w - sum_k ( <gd, T_{ka} g>
 *            + 2 sum_{j=1..J} (P_{jk}(cos) cos(2 pi j b x) + P_{jk}(sin) sin(2 pi j b x)) ) w(x - ka).
 */
inline SampledWindow real_compact_dual(const SampledWindow& g, const SampledWindow& gd, double a,
                                       double b, const SampledWindow& w, long J,
                                       double dual_tol = kWindowDualTolerance) {
    if (J < 0) throw std::invalid_argument("J must be non-negative");
    detail::require_real(g, "g");
    detail::require_real(gd, "gd");
    detail::require_real(w, "w");
    detail::require_dual_window(g, gd, a, b, dual_tol);
    g.require_same_grid(w, "real_compact_dual");
    const LatticeSteps s = lattice_steps(g.grid(), a, b);
    const OverlapSet K = overlap_set_K(g, gd, a, b);

    SampledWindow phi = detail::dual_support_frame(gd, w, K.ks, s.a_steps);
    phi += w;
    for (long k : K.ks) {
        const double dc = p_coefficient(gd, g, 0, k, a, b, PCoefficient::Kind::Cos).value;
        std::vector<double> pc, ps;
        for (long j = 1; j <= J; ++j) {
            pc.push_back(p_coefficient(gd, g, j, k, a, b, PCoefficient::Kind::Cos).value);
            ps.push_back(p_coefficient(gd, g, j, k, a, b, PCoefficient::Kind::Sin).value);
        }
        const long shift = k * s.a_steps;
        for (long i = w.first_index() + shift; i <= w.last_index() + shift; ++i) {
            double mult = dc;
            for (long j = 1; j <= J; ++j) {
                const complex e = detail::lattice_phase(j, i, s.shift_steps);
                const auto jj = static_cast<std::size_t>(j - 1);
                mult += 2.0 * (pc[jj] * e.real() + ps[jj] * e.imag());
            }
            phi.ref(i) -= mult * w.at(i - shift).real();
        }
    }
    return phi;
}

/**
 * True iff |w(x0 + t) - w(x0 - t)| < tol at every grid offset t.
 * @p x0 may be a grid or half-grid point.
 */
inline bool symmetry_check(const SampledWindow& w, double x0, double tol) {
    const long twice = w.grid().twice_index_of(x0);  // i + mirror(i) == twice
    const long lo = std::min(w.first_index(), twice - w.last_index());
    const long hi = std::max(w.last_index(), twice - w.first_index());
    for (long i = lo; i <= hi; ++i)
        if (std::abs(w.at(i) - w.at(twice - i)) >= tol) return false;
    return true;
}

struct GaborIterationTrace {
    std::vector<SampledWindow> iterates;       ///< g^0 = gd, g^1, ...
    std::vector<double> step_deltas;           ///< ||g^{p+1} - g^p||_2, p = 0..P-1
    std::vector<double> duality_residuals;     ///< per iterate
    std::vector<std::pair<double, double>> supports;        ///< actual support per iterate
    std::vector<std::pair<double, double>> support_bounds;  ///< Walnut-predicted bound per iterate
    double lambda = 0.0;
    double contraction = 0.0;  ///< max(|1 - lambda A|, |1 - lambda B|) from estimated bounds
    FrameBounds bounds;
};

struct GaborIterateOptions {
    double certificate_tol = kWindowDualTolerance;
    double trim_tol = 1e-14;
};

/**
 * g^0 = gd, g^{p+1} = lambda g + (I - lambda S_G) g^p for p < steps.
 *
 * Throws ContractionError unless max(|1 - lambda A|, |1 - lambda B|) < 1 for
 * the estimated frame bounds, and DualityError if gd or any iterate fails the
 * duality certificate.
 */
inline GaborIterationTrace gabor_iterate(const SampledWindow& g, const SampledWindow& gd, double a,
                                         double b, double lambda, int steps,
                                         const GaborIterateOptions& opt = {}) {
    if (steps < 0) throw std::invalid_argument("steps must be non-negative");
    const GaborSpec spec{g, a, b};
    const LatticeSteps s = spec.steps();

    GaborIterationTrace trace;
    trace.lambda = lambda;
    trace.bounds = frame_bounds_estimate(spec);
    trace.contraction = trace.bounds.contraction(lambda);
    if (!(lambda > 0.0) || !(trace.contraction < 1.0))
        throw ContractionError("contraction not certified: max(|1 - lambda A|, |1 - lambda B|) = "
                               + std::to_string(trace.contraction));

    const OffsetRange walnut = correlation_offsets(g, g, s.shift_steps);
    const long reach = std::max(-walnut.lo, walnut.hi) * s.shift_steps;

    auto record = [&](SampledWindow w, long bound_lo, long bound_hi) {
        const auto rep = duality_residual(g, w, a, b, opt.certificate_tol);
        if (!rep.pass)
            throw DualityError("iterate " + std::to_string(trace.iterates.size())
                               + " failed the duality certificate (residual "
                               + std::to_string(rep.max_residual) + ")");
        trace.duality_residuals.push_back(rep.max_residual);
        trace.supports.emplace_back(w.support_lo(), w.support_hi());
        trace.support_bounds.emplace_back(g.grid().x(bound_lo), g.grid().x(bound_hi));
        trace.iterates.push_back(std::move(w));
    };

    long bound_lo = gd.first_index(), bound_hi = gd.last_index();
    record(gd, bound_lo, bound_hi);
    for (int p = 0; p < steps; ++p) {
        const SampledWindow& cur = trace.iterates.back();
        SampledWindow next = cur;
        next.axpy(lambda, g);
        next.axpy(-lambda, frame_operator_apply(spec, cur));
        next.trim(opt.trim_tol);
        bound_lo = std::min(g.first_index(), bound_lo - reach);
        bound_hi = std::max(g.last_index(), bound_hi + reach);
        trace.step_deltas.push_back(l2_norm(next - cur));
        record(std::move(next), bound_lo, bound_hi);
    }
    return trace;
}

} // namespace gabordual
