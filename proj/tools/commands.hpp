/**
 * @file commands.hpp
 * @brief Subcommands of the gabordual command-line tool.
 *
 * Summaries go to @c out as key=value lines, diagnostics to @c err, and CSV
 * data to files under the output directory.
 */
#pragma once

#include "gabordual.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

namespace gabordual::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kContraction = 2, kDuality = 3 };

struct FiniteExample {
    RealFrame g;
    RealFrame gd;
};

/// Frames and initial duals of the four two-dimensional examples.
inline FiniteExample finite_example(const std::string& id) {
    const RealFrame g1{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 1.0}};
    if (id == "i") return {g1, RealFrame{{0.0, 1.0}, {1.0, 0.0}, {-1.0, 1.0}}};
    if (id == "ii") return {g1, RealFrame{{2.0, -1.0}, {-1.0, 2.0}, {1.0, -1.0}}};
    if (id == "iii") return {g1, RealFrame{{2.0, 0.0}, {-1.0, 1.0}, {1.0, 0.0}}};
    if (id == "iv")
        return {RealFrame{{1.0, 0.0}, {0.0, 1.0}, {-2.0, 1.0}},
                RealFrame{{-1.0, 2.0}, {1.0, 0.0}, {-1.0, 1.0}}};
    throw std::invalid_argument("unknown example '" + id + "' (expected i, ii, iii, iv or custom)");
}

inline StoppingRule parse_rule(const std::string& name, double threshold, int digits) {
    if (name == "digits") return StoppingRule::truncated_digits(digits);
    if (name == "canonical") return StoppingRule::canonical_max_abs(threshold);
    if (name == "euclidean") return StoppingRule::canonical_euclidean(threshold);
    throw std::invalid_argument("unknown stopping rule '" + name + "'");
}

struct FiniteOptions {
    std::string example = "i";
    std::string frame_path;
    std::string dual_path;
    std::string lambda = "1/2";
    std::string init = "dual";
    std::string rule = "digits";
    double stop = 5e-5;
    int digits = 4;
    std::string out;
};

struct FiniteResult {
    int exit_code = kOk;
    int p_final = -1;
};

namespace detail {
inline RealFrame load_frame(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open frame file '" + path + "'");
    return csv::read_frame(in);
}

inline std::ofstream open_output(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream os(std::filesystem::path(dir) / name);
    if (!os) throw std::runtime_error("cannot write " + (std::filesystem::path(dir) / name).string());
    return os;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ContractionError& e) {
        err << "error: " << e.what() << '\n';
        return kContraction;
    } catch (const NotAFrameError& e) {
        err << "error: " << e.what() << '\n';
        return kContraction;
    } catch (const DualityError& e) {
        err << "error: " << e.what() << '\n';
        return kDuality;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
}
} // namespace detail

inline FiniteResult run_finite(const FiniteOptions& opt, std::ostream& out, std::ostream& err) {
    FiniteResult result;
    result.exit_code = detail::guarded(err, [&] {
        const bool custom = opt.example == "custom";
        if (custom && (opt.frame_path.empty() || (opt.init == "dual" && opt.dual_path.empty())))
            throw std::invalid_argument("--example custom needs --frame and --frame-dual");
        if (opt.init != "dual" && opt.init != "null")
            throw std::invalid_argument("--init must be dual or null");
        const FiniteExample ex = custom
            ? FiniteExample{detail::load_frame(opt.frame_path),
                            opt.init == "dual" ? detail::load_frame(opt.dual_path)
                                               : detail::load_frame(opt.frame_path)}
            : finite_example(opt.example);
        const double lambda = parse_rational(opt.lambda);
        const StoppingRule rule = parse_rule(opt.rule, opt.stop, opt.digits);

        const FrameBounds bounds = frame_bounds(ex.g);
        const auto trace = opt.init == "dual" ? iterate_duals(ex.g, ex.gd, lambda, rule)
                                              : classical_frame_algorithm(ex.g, lambda, rule);
        out << "example=" << opt.example << '\n'
            << "lambda=" << opt.lambda << '\n'
            << "init=" << opt.init << '\n'
            << "rule=" << opt.rule << '\n'
            << "frame_bounds=" << csv::num(bounds.lower) << ',' << csv::num(bounds.upper) << '\n'
            << "contraction=" << csv::num(trace.contraction) << '\n'
            << "converged=" << (trace.converged ? "true" : "false") << '\n'
            << "p=" << trace.p_final << '\n';
        if (!opt.out.empty()) {
            auto os = detail::open_output(opt.out, "finite_trace.csv");
            csv::write_finite_trace(os, trace);
        }
        result.p_final = trace.p_final;
        return trace.converged ? int(kOk) : int(kContraction);
    });
    return result;
}

struct WindowOptions {
    std::string window = "bspline2";
    std::string dual = "h2";
    std::string a = "1";
    std::string b = "1/3";
    long grid_n = 120;
    std::string out = ".";
};

struct GaborDualOptions : WindowOptions {
    std::string w_scale = "1/10";
    long jmax = 6;
};

struct IterateOptions : WindowOptions {
    std::string lambda = "auto";
    int steps = 25;
};

/// Named window (bspline2, h2) or a path to a window CSV.
inline SampledWindow resolve_window(const std::string& name, const GridSpec& grid) {
    if (name == "bspline2") return sample(bspline2(), grid);
    if (name == "h2") return sample(h2(), grid);
    if (name.size() > 4 && name.substr(name.size() - 4) == ".csv") {
        std::ifstream in(name);
        if (!in) throw std::invalid_argument("cannot open window file '" + name + "'");
        return csv::read_window(in, grid);
    }
    throw std::invalid_argument("unknown window '" + name + "' (expected bspline2, h2 or a .csv file)");
}

namespace detail {
struct Setup {
    double a = 0.0, b = 0.0;
    GridSpec grid;
    SampledWindow g, gd;
};

inline Setup setup(const WindowOptions& opt, std::ostream& err) {
    Setup s;
    s.a = parse_rational(opt.a);
    s.b = parse_rational(opt.b);
    s.grid = grid_for_lattice(s.a, s.b, opt.grid_n);
    s.g = resolve_window(opt.window, s.grid);
    s.gd = resolve_window(opt.dual, s.grid);
    if (!GaborSpec{s.g, s.a, s.b}.density_ok())
        err << "warning: a*b > 1, the system cannot be a frame\n";
    return s;
}

inline void write_window_file(const std::string& dir, const std::string& name, const SampledWindow& w) {
    auto os = open_output(dir, name);
    csv::write_window(os, w);
}

inline std::string join(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}
} // namespace detail

/**
 * Builds phi for jmax and jmax+1 with w = w_scale * window and writes
 * window.csv, dual.csv, phi_J<jmax>.csv, phi_J<jmax+1>.csv, coefficients.csv.
 */
inline int run_gabor_dual(const GaborDualOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (opt.jmax < 0) throw std::invalid_argument("--jmax must be non-negative");
        const auto s = detail::setup(opt, err);
        const double scale = parse_rational(opt.w_scale);
        const SampledWindow w = scale * s.g;

        const auto cert = duality_residual(s.g, s.gd, s.a, s.b, kWindowDualTolerance);
        out << "dual_residual=" << csv::num(cert.max_residual) << '\n';
        if (!cert.pass) throw DualityError("dual window fails the duality certificate");
        try {
            const FrameBounds fb = frame_bounds_estimate(GaborSpec{s.g, s.a, s.b});
            out << "frame_bounds_estimate=" << csv::num(fb.lower) << ',' << csv::num(fb.upper) << '\n';
        } catch (const NotAFrameError& e) {
            err << "warning: " << e.what() << '\n';
        }
        out << "bessel_bound_w=" << csv::num(bessel_bound(w, s.a, s.b)) << '\n';

        detail::write_window_file(opt.out, "window.csv", s.g);
        detail::write_window_file(opt.out, "dual.csv", s.gd);
        for (long J : {opt.jmax, opt.jmax + 1}) {
            const auto cd = compact_dual_construction(s.g, s.gd, s.a, s.b, w, J);
            if (J == opt.jmax) {
                out << "K=" << detail::join(cd.K.ks) << '\n'
                    << "K_support_candidates=" << detail::join(cd.K.support_candidates) << '\n';
            }
            const auto rep = duality_residual(s.g, cd.phi, s.a, s.b);
            out << "phi_J" << J << "_residual=" << csv::num(rep.max_residual) << '\n';
            for (const auto& [k, tail] : cd.tail_energy)
                out << "phi_J" << J << "_tail_k" << k << '=' << csv::num(tail) << '\n';
            detail::write_window_file(opt.out, "phi_J" + std::to_string(J) + ".csv", cd.phi);
            if (J == opt.jmax + 1) {
                auto os = detail::open_output(opt.out, "coefficients.csv");
                csv::write_coefficients(os, cd.coefficients);
            }
        }
        return int(kOk);
    });
}

/// Runs the dual-preserving Gabor iteration; writes trace.csv and final.csv.
inline int run_gabor_iterate(const IterateOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (opt.steps < 0) throw std::invalid_argument("--steps must be non-negative");
        const auto s = detail::setup(opt, err);
        const FrameBounds fb = frame_bounds_estimate(GaborSpec{s.g, s.a, s.b});
        const double lambda = opt.lambda == "auto" ? fb.optimal_lambda() : parse_rational(opt.lambda);
        const auto trace = gabor_iterate(s.g, s.gd, s.a, s.b, lambda, opt.steps);
        out << "frame_bounds_estimate=" << csv::num(fb.lower) << ',' << csv::num(fb.upper) << '\n'
            << "lambda=" << csv::num(lambda) << '\n'
            << "contraction=" << csv::num(trace.contraction) << '\n'
            << "steps=" << opt.steps << '\n'
            << "final_residual=" << csv::num(trace.duality_residuals.back()) << '\n';
        auto os = detail::open_output(opt.out, "trace.csv");
        csv::write_trace(os, trace);
        detail::write_window_file(opt.out, "final.csv", trace.iterates.back());
        return int(kOk);
    });
}

} // namespace gabordual::cli
