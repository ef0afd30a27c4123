/**
 * @file finite_frames.hpp
 * @brief Frames in finite-dimensional real or complex space.
 *
 * A frame is stored as a d x n synthesis matrix whose columns are the frame
 * vectors, so the frame operator is T T^* and the coefficients <h, g_k>
 * are T^* h.
 */
#pragma once

#include "gabordual/duality_report.hpp"
#include "gabordual/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

namespace gabordual {

template <typename Scalar>
class FiniteFrame {
public:
    using scalar_type = Scalar;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    /// Columns of @p synthesis are the frame vectors.
    explicit FiniteFrame(Matrix synthesis) : synthesis_(std::move(synthesis)) {
        if (synthesis_.rows() < 1)
            throw ShapeError("frame vectors must have dimension >= 1");
        if (synthesis_.cols() < 1)
            throw ShapeError("frame must contain at least one vector");
    }

    explicit FiniteFrame(const std::vector<Vector>& vectors)
        : FiniteFrame(stack(vectors)) {}

    FiniteFrame(std::initializer_list<std::initializer_list<Scalar>> vectors)
        : FiniteFrame(stack(vectors)) {}

    Eigen::Index dim() const { return synthesis_.rows(); }
    Eigen::Index size() const { return synthesis_.cols(); }

    Vector operator[](Eigen::Index k) const { return synthesis_.col(k); }
    const Matrix& matrix() const { return synthesis_; }

    /// Sum of squared vector norms.
    double energy() const { return synthesis_.squaredNorm(); }

    static FiniteFrame zeros(Eigen::Index d, Eigen::Index n) {
        return FiniteFrame(Matrix::Zero(d, n));
    }

private:
    static Matrix stack(const std::vector<Vector>& vectors) {
        if (vectors.empty())
            throw ShapeError("frame must contain at least one vector");
        const auto d = vectors.front().size();
        Matrix m(d, static_cast<Eigen::Index>(vectors.size()));
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            if (vectors[k].size() != d)
                throw ShapeError("frame vector " + std::to_string(k) + " has dimension "
                                 + std::to_string(vectors[k].size()) + ", expected "
                                 + std::to_string(d));
            m.col(static_cast<Eigen::Index>(k)) = vectors[k];
        }
        return m;
    }

    static Matrix stack(std::initializer_list<std::initializer_list<Scalar>> vectors) {
        std::vector<Vector> cols;
        for (const auto& v : vectors) {
            Vector c(static_cast<Eigen::Index>(v.size()));
            Eigen::Index i = 0;
            for (const auto& x : v) c(i++) = x;
            cols.push_back(std::move(c));
        }
        return stack(cols);
    }

    Matrix synthesis_;
};

using RealFrame = FiniteFrame<double>;
using ComplexFrame = FiniteFrame<std::complex<double>>;

/// Optimal frame bounds: extreme eigenvalues of the frame operator.
struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;

    /// Spectral norm of I - lambda S, given the spectrum lies in [lower, upper].
    double contraction(double lambda) const {
        return std::max(std::abs(1.0 - lambda * lower), std::abs(1.0 - lambda * upper));
    }
    double optimal_lambda() const { return 2.0 / (lower + upper); }
};

template <typename Scalar>
typename FiniteFrame<Scalar>::Matrix frame_operator(const FiniteFrame<Scalar>& frame) {
    const auto& t = frame.matrix();
    return t * t.adjoint();
}

namespace detail {
template <typename Scalar>
void require_same_shape(const FiniteFrame<Scalar>& a, const FiniteFrame<Scalar>& b,
                        const char* what) {
    if (a.dim() != b.dim() || a.size() != b.size())
        throw ShapeError(std::string(what) + ": shape mismatch (" + std::to_string(a.dim())
                         + "x" + std::to_string(a.size()) + " vs " + std::to_string(b.dim())
                         + "x" + std::to_string(b.size()) + ")");
}

template <typename Scalar>
Eigen::VectorXd frame_spectrum(const FiniteFrame<Scalar>& frame) {
    Eigen::SelfAdjointEigenSolver<typename FiniteFrame<Scalar>::Matrix> eig(
        frame_operator(frame), Eigen::EigenvaluesOnly);
    return eig.eigenvalues();
}

// Relative threshold below which the smallest eigenvalue counts as zero.
inline constexpr double kSpanTolerance = 1e-12;
} // namespace detail

/**
 * Optimal frame bounds (A, B).
 * Throws NotAFrameError when the vectors do not span the space.
 */
template <typename Scalar>
FrameBounds frame_bounds(const FiniteFrame<Scalar>& frame) {
    const Eigen::VectorXd ev = detail::frame_spectrum(frame);
    const double lo = ev.minCoeff();
    const double hi = ev.maxCoeff();
    if (!(hi > 0.0) || lo <= detail::kSpanTolerance * hi)
        throw NotAFrameError("family does not span the space (smallest frame-operator eigenvalue "
                             + std::to_string(lo) + ")");
    return {lo, hi};
}

/// Largest eigenvalue of the frame operator; zero for the null family.
template <typename Scalar>
double bessel_bound(const FiniteFrame<Scalar>& family) {
    return std::max(0.0, detail::frame_spectrum(family).maxCoeff());
}

/// {S^{-1} g_k}, by a direct dense solve.
template <typename Scalar>
FiniteFrame<Scalar> canonical_dual(const FiniteFrame<Scalar>& frame) {
    frame_bounds(frame);  // throws on a singular frame operator
    const auto s = frame_operator(frame);
    return FiniteFrame<Scalar>(s.ldlt().solve(frame.matrix()));
}

/**
 * Checks h = sum_k <h, g_k> f_k by forming R = sum_k f_k g_k^* - I.
 * Passes iff max |R_ij| < tol.
 */
template <typename Scalar>
DualityReport is_dual(const FiniteFrame<Scalar>& g, const FiniteFrame<Scalar>& f, double tol) {
    detail::require_same_shape(g, f, "is_dual");
    using Matrix = typename FiniteFrame<Scalar>::Matrix;
    const Matrix r = f.matrix() * g.matrix().adjoint() - Matrix::Identity(g.dim(), g.dim());
    DualityReport report;
    report.max_residual = r.cwiseAbs().maxCoeff();
    report.tol = tol;
    report.pass = report.max_residual < tol;
    return report;
}

/**
 * All duals of @p g from one known dual @p gd:
 * f_k = gd_k + w_k - sum_j <gd_k, g_j> w_j for an arbitrary family @p w
 * (every finite family is Bessel).
 */
template <typename Scalar>
FiniteFrame<Scalar> dual_from_bessel(const FiniteFrame<Scalar>& g, const FiniteFrame<Scalar>& gd,
                                     const FiniteFrame<Scalar>& w) {
    detail::require_same_shape(g, gd, "dual_from_bessel(G, Gd)");
    detail::require_same_shape(g, w, "dual_from_bessel(G, W)");
    // (G^* Gd)_{jk} = <gd_k, g_j>
    return FiniteFrame<Scalar>(gd.matrix() + w.matrix()
                               - w.matrix() * (g.matrix().adjoint() * gd.matrix()));
}

/**
 * When to stop a dual-preserving iteration.
 *
 * TruncatedDigits stops at the first p for which F^p and F^{p+1} agree in
 * every coordinate after truncation to @c digits decimals (the truncated
 * digits have settled). CanonicalMaxAbs and CanonicalEuclidean compare F^p
 * with the canonical dual, entrywise resp. per vector, against @c threshold.
 */
struct StoppingRule {
    enum class Kind { TruncatedDigits, CanonicalMaxAbs, CanonicalEuclidean };

    Kind kind = Kind::TruncatedDigits;
    int digits = 4;
    double threshold = 5e-5;
    int max_steps = 100000;

    static StoppingRule truncated_digits(int digits = 4) {
        StoppingRule r;
        r.kind = Kind::TruncatedDigits;
        r.digits = digits;
        return r;
    }
    static StoppingRule canonical_max_abs(double threshold = 5e-5) {
        StoppingRule r;
        r.kind = Kind::CanonicalMaxAbs;
        r.threshold = threshold;
        return r;
    }
    static StoppingRule canonical_euclidean(double threshold = 5e-5) {
        StoppingRule r;
        r.kind = Kind::CanonicalEuclidean;
        r.threshold = threshold;
        return r;
    }
};

/**
 * Record of F^0, F^1, ..., F^{p_final}.
 *
 * errors[p]   max_k max-abs entry of f^p_k - S^{-1} g_k
 * distances[p] max_k Euclidean norm of f^p_k - S^{-1} g_k
 * residuals[p] is_dual residual of F^p against G
 * error_bound_constant = sqrt(B_{F^0}) + 1/sqrt(A_G), so that
 * distances[p] <= contraction^p * error_bound_constant.
 */
template <typename Scalar>
struct IterationTrace {
    std::vector<FiniteFrame<Scalar>> iterates;
    std::vector<double> errors;
    std::vector<double> distances;
    std::vector<double> residuals;
    double lambda = 0.0;
    double contraction = 0.0;
    double error_bound_constant = 0.0;
    int p_final = 0;
    bool converged = false;
    FiniteFrame<Scalar> canonical;

    /// Per-vector max-abs deviation of iterate p from the canonical dual.
    Eigen::VectorXd vector_errors(int p) const {
        return (iterates.at(static_cast<std::size_t>(p)).matrix() - canonical.matrix())
            .cwiseAbs()
            .colwise()
            .maxCoeff()
            .transpose();
    }
};

namespace detail {

template <typename Scalar>
bool truncated_equal(const typename FiniteFrame<Scalar>::Matrix& a,
                     const typename FiniteFrame<Scalar>::Matrix& b, int digits) {
    const double scale = std::pow(10.0, digits);
    auto same = [scale](double x, double y) { return std::trunc(x * scale) == std::trunc(y * scale); };
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if constexpr (std::is_same_v<Scalar, double>) {
                if (!same(a(i, j), b(i, j))) return false;
            } else {
                if (!same(a(i, j).real(), b(i, j).real()) || !same(a(i, j).imag(), b(i, j).imag()))
                    return false;
            }
        }
    }
    return true;
}

template <typename Scalar>
IterationTrace<Scalar> run_iteration(const FiniteFrame<Scalar>& g, FiniteFrame<Scalar> start,
                                     double lambda, const StoppingRule& stop) {
    using Matrix = typename FiniteFrame<Scalar>::Matrix;
    if (!(lambda > 0.0))
        throw ContractionError("lambda must be positive");
    const FrameBounds bounds = frame_bounds(g);
    const double q = bounds.contraction(lambda);
    if (!(q < 1.0))
        throw ContractionError("||I - lambda S|| = " + std::to_string(q) + " >= 1 for lambda = "
                               + std::to_string(lambda));

    const double bound_constant = std::sqrt(bessel_bound(start)) + 1.0 / std::sqrt(bounds.lower);
    IterationTrace<Scalar> trace{{}, {}, {}, {}, lambda, q, bound_constant, 0, false, canonical_dual(g)};
    const Matrix s = frame_operator(g);
    const Matrix& gm = g.matrix();

    auto record = [&](const FiniteFrame<Scalar>& f) {
        const Matrix diff = f.matrix() - trace.canonical.matrix();
        trace.errors.push_back(diff.cwiseAbs().maxCoeff());
        trace.distances.push_back(diff.colwise().norm().maxCoeff());
        trace.residuals.push_back(is_dual(g, f, 0.0).max_residual);
        trace.iterates.push_back(f);
    };
    auto step = [&](const Matrix& f) -> Matrix { return lambda * gm + f - lambda * (s * f); };

    FiniteFrame<Scalar> current = std::move(start);
    record(current);
    for (int p = 0; p < stop.max_steps; ++p) {
        bool done = false;
        FiniteFrame<Scalar> next(step(current.matrix()));
        switch (stop.kind) {
        case StoppingRule::Kind::TruncatedDigits:
            done = truncated_equal<Scalar>(current.matrix(), next.matrix(), stop.digits);
            break;
        case StoppingRule::Kind::CanonicalMaxAbs:
            done = trace.errors.back() < stop.threshold;
            break;
        case StoppingRule::Kind::CanonicalEuclidean:
            done = trace.distances.back() < stop.threshold;
            break;
        }
        if (done) {
            trace.p_final = p;
            trace.converged = true;
            return trace;
        }
        current = std::move(next);
        record(current);
    }
    trace.p_final = stop.max_steps;
    return trace;
}

} // namespace detail

/// Tolerance at which the starting family must already be dual.
inline constexpr double kStartDualTolerance = 1e-8;

/**
 * F^0 = Gd, F^{p+1} = lambda G + F^p - lambda S_G F^p.
 *
 * Every iterate is a dual of G. Throws ContractionError if
 * ||I - lambda S_G|| >= 1 and DualityError if Gd is not dual to G at
 * kStartDualTolerance.
 */
template <typename Scalar>
IterationTrace<Scalar> iterate_duals(const FiniteFrame<Scalar>& g, const FiniteFrame<Scalar>& gd,
                                     double lambda, const StoppingRule& stop = {}) {
    detail::require_same_shape(g, gd, "iterate_duals");
    const auto check = is_dual(g, gd, kStartDualTolerance);
    if (!check.pass)
        throw DualityError("starting family is not dual to G (residual "
                           + std::to_string(check.max_residual) + ")");
    return detail::run_iteration(g, gd, lambda, stop);
}

/**
 * Classical frame algorithm: the same recursion started from F^0 = 0.
 * Intermediate iterates are generally not duals; residuals records that.
 */
template <typename Scalar>
IterationTrace<Scalar> classical_frame_algorithm(const FiniteFrame<Scalar>& g, double lambda,
                                                 const StoppingRule& stop = {}) {
    return detail::run_iteration(g, FiniteFrame<Scalar>::zeros(g.dim(), g.size()), lambda, stop);
}

} // namespace gabordual
