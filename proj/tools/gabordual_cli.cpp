#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace gabordual::cli;

    CLI::App app{"Dual frames and compactly supported dual Gabor windows"};
    app.require_subcommand(1);

    FiniteOptions fin;
    auto* finite = app.add_subcommand("finite", "dual-preserving iteration for a finite frame");
    finite->add_option("--example", fin.example, "i, ii, iii, iv or custom")->capture_default_str();
    finite->add_option("--frame", fin.frame_path, "frame CSV for --example custom (one vector per line)");
    finite->add_option("--frame-dual", fin.dual_path, "dual frame CSV for --example custom");
    finite->add_option("--lambda", fin.lambda, "relaxation parameter, e.g. 1/3")->capture_default_str();
    finite->add_option("--init", fin.init, "dual or null")->capture_default_str();
    finite->add_option("--rule", fin.rule, "stopping rule: digits, canonical or euclidean")->capture_default_str();
    finite->add_option("--stop", fin.stop, "threshold for canonical/euclidean rules")->capture_default_str();
    finite->add_option("--digits", fin.digits, "decimal digits for the digits rule")->capture_default_str();
    finite->add_option("--out", fin.out, "directory for finite_trace.csv");

    auto add_window_flags = [](CLI::App* cmd, WindowOptions& o) {
        cmd->add_option("--window", o.window, "bspline2, h2 or window CSV")->capture_default_str();
        cmd->add_option("--dual", o.dual, "bspline2, h2 or window CSV")->capture_default_str();
        cmd->add_option("--a", o.a, "translation step")->capture_default_str();
        cmd->add_option("--b", o.b, "modulation step")->capture_default_str();
        cmd->add_option("--grid-n", o.grid_n, "grid points per translation step")->capture_default_str();
        cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    };

    GaborDualOptions gd;
    auto* gabor_dual = app.add_subcommand("gabor-dual", "compactly supported dual window from a known dual");
    add_window_flags(gabor_dual, gd);
    gabor_dual->add_option("--w-scale", gd.w_scale, "w = scale * window")->capture_default_str();
    gabor_dual->add_option("--jmax", gd.jmax, "modulation truncation J")->capture_default_str();

    IterateOptions gi;
    auto* gabor_iter = app.add_subcommand("gabor-iterate", "dual-preserving iteration towards the canonical dual window");
    add_window_flags(gabor_iter, gi);
    gabor_iter->add_option("--lambda", gi.lambda, "relaxation parameter or auto = 2/(A+B)")->capture_default_str();
    gabor_iter->add_option("--steps", gi.steps, "number of iteration steps")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    if (finite->parsed()) return run_finite(fin, std::cout, std::cerr).exit_code;
    if (gabor_dual->parsed()) return run_gabor_dual(gd, std::cout, std::cerr);
    return run_gabor_iterate(gi, std::cout, std::cerr);
}
