/**
 * @file csv.hpp
 * @brief CSV encodings of windows, coefficient tables and iteration traces.
 *
 * Numbers are written with 17 significant digits ("%.17g").
 */
#pragma once

#include "gabordual/dual_synthesis.hpp"
#include "gabordual/finite_frames.hpp"
#include "gabordual/grid.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gabordual::csv {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Header `x,re,im`, one row per grid point of the support.
inline void write_window(std::ostream& os, const SampledWindow& w) {
    os << "x,re,im\n";
    for (long i = w.first_index(); i <= w.last_index(); ++i) {
        const complex v = w.at(i);
        os << num(w.x(i)) << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
    }
}

namespace detail {
inline std::vector<double> split_numbers(const std::string& line, std::size_t lineno) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad number '" + cell + "'");
        }
    }
    return out;
}

inline bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}
} // namespace detail

/**
 * Reads a `x,re,im` window. Abscissae must be consecutive points of @p grid;
 * a missing `im` column is read as zero.
 */
inline SampledWindow read_window(std::istream& is, const GridSpec& grid) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw std::invalid_argument("empty window CSV");
    ++lineno;
    if (line.rfind("x,re", 0) != 0) throw std::invalid_argument("window CSV must start with header x,re,im");
    long first = 0, expected = 0;
    std::vector<complex> samples;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::blank(line)) continue;
        const auto cells = detail::split_numbers(line, lineno);
        if (cells.size() < 2 || cells.size() > 3)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected x,re,im");
        const long i = grid.index_of(cells[0]);
        if (samples.empty()) first = expected = i;
        if (i != expected)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": grid points must be consecutive");
        samples.emplace_back(cells[1], cells.size() == 3 ? cells[2] : 0.0);
        ++expected;
    }
    if (samples.empty()) throw std::invalid_argument("window CSV has no samples");
    return SampledWindow(grid, first, std::move(samples));
}

/// Header `j,k,re,im`.
inline void write_coefficients(std::ostream& os, const std::vector<GaborCoefficient>& table) {
    os << "j,k,re,im\n";
    for (const auto& c : table)
        os << c.j << ',' << c.k << ',' << num(c.value.real()) << ',' << num(c.value.imag()) << '\n';
}

/// Header `p,step_delta,duality_residual,support_lo,support_hi`; step_delta is empty for p = 0.
inline void write_trace(std::ostream& os, const GaborIterationTrace& trace) {
    os << "p,step_delta,duality_residual,support_lo,support_hi\n";
    for (std::size_t p = 0; p < trace.iterates.size(); ++p) {
        os << p << ',';
        if (p > 0) os << num(trace.step_deltas[p - 1]);
        os << ',' << num(trace.duality_residuals[p]) << ',' << num(trace.supports[p].first) << ','
           << num(trace.supports[p].second) << '\n';
    }
}

/// Header `p,k,err`: max-abs deviation of f^p_k from the canonical dual.
template <typename Scalar>
void write_finite_trace(std::ostream& os, const IterationTrace<Scalar>& trace) {
    os << "p,k,err\n";
    for (std::size_t p = 0; p < trace.iterates.size(); ++p) {
        const Eigen::VectorXd errs = trace.vector_errors(static_cast<int>(p));
        for (Eigen::Index k = 0; k < errs.size(); ++k) os << p << ',' << k << ',' << num(errs(k)) << '\n';
    }
}

/// One frame vector per line, comma separated; blank lines and '#' comments skipped.
inline RealFrame read_frame(std::istream& is) {
    std::vector<Eigen::VectorXd> vectors;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::blank(line) || line.front() == '#') continue;
        const auto cells = detail::split_numbers(line, lineno);
        vectors.push_back(Eigen::Map<const Eigen::VectorXd>(cells.data(), static_cast<Eigen::Index>(cells.size())));
    }
    return RealFrame(vectors);
}

} // namespace gabordual::csv
