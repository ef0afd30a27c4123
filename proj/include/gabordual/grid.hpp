/**
 * @file grid.hpp
 * @brief Uniform sampling grid and compactly supported sampled windows.
 */
#pragma once

#include "gabordual/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace gabordual {

using complex = std::complex<double>;

/**
 * Grid points are x_i = i * unit / divisions for integer i; the origin is 0.
 * Keeping the step as a ratio lets x_i be formed with a single rounding.
 */
struct GridSpec {
    double unit = 1.0;
    long divisions = 1;

    double step() const { return unit / static_cast<double>(divisions); }
    double x(long i) const { return static_cast<double>(i) * unit / static_cast<double>(divisions); }

    /// Index of grid point @p t; throws ShapeError if t is not on the grid.
    long index_of(double t, double rel_tol = 1e-9) const {
        const double r = t / step();
        const double n = std::round(r);
        if (std::abs(r - n) > rel_tol * std::max(1.0, std::abs(r)))
            throw ShapeError("value " + std::to_string(t) + " is not a multiple of the grid step "
                             + std::to_string(step()));
        return static_cast<long>(n);
    }

    /// Index for a half-grid point: returns 2t/h as an integer.
    long twice_index_of(double t) const { return GridSpec{unit, 2 * divisions}.index_of(t); }

    bool compatible(const GridSpec& other) const {
        return std::abs(step() - other.step()) <= 1e-14 * step();
    }
};

/// Lattice parameters expressed in grid steps: a = a_steps*h, 1/b = shift_steps*h.
struct LatticeSteps {
    long a_steps = 0;
    long shift_steps = 0;
};

/**
 * Checks that a/h and 1/(b h) are positive integers.
 * Throws ShapeError otherwise.
 */
inline LatticeSteps lattice_steps(const GridSpec& grid, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw ShapeError("lattice parameters a, b must be positive");
    LatticeSteps s;
    try {
        s.a_steps = grid.index_of(a);
        s.shift_steps = grid.index_of(1.0 / b);
    } catch (const ShapeError&) {
        throw ShapeError("grid step " + std::to_string(grid.step())
                         + " does not divide both a and 1/b");
    }
    if (s.a_steps <= 0 || s.shift_steps <= 0)
        throw ShapeError("lattice parameters smaller than one grid step");
    return s;
}

/// Grid with step a/n; the lattice invariant must also hold for b.
inline GridSpec grid_for_lattice(double a, double b, long n) {
    if (n <= 0)
        throw ShapeError("grid subdivision count must be positive");
    GridSpec grid{a, n};
    lattice_steps(grid, a, b);
    return grid;
}

/**
 * Function with compact support sampled on a GridSpec.
 *
 * Samples cover the grid points first_index() .. last_index(); the function
 * is zero elsewhere. The support [x(first), x(last)] always has at least one
 * grid point, so the zero function is one zero sample.
 */
class SampledWindow {
public:
    SampledWindow() : SampledWindow(GridSpec{}) {}

    explicit SampledWindow(GridSpec grid) : grid_(grid), samples_(1, complex{}) {}

    SampledWindow(GridSpec grid, long first, std::vector<complex> samples)
        : grid_(grid), first_(first), samples_(std::move(samples)) {
        if (samples_.empty())
            samples_.assign(1, complex{});
        for (const auto& v : samples_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("window samples must be finite");
    }

    SampledWindow(GridSpec grid, long first, const std::vector<double>& samples)
        : SampledWindow(grid, first, std::vector<complex>(samples.begin(), samples.end())) {}

    static SampledWindow zero(GridSpec grid) { return SampledWindow(grid); }

    /// Zero samples on the grid points of [first, last].
    static SampledWindow zeros(GridSpec grid, long first, long last) {
        return SampledWindow(grid, first,
                             std::vector<complex>(static_cast<std::size_t>(last - first + 1)));
    }

    const GridSpec& grid() const { return grid_; }
    double step() const { return grid_.step(); }
    long first_index() const { return first_; }
    long last_index() const { return first_ + static_cast<long>(samples_.size()) - 1; }
    std::size_t size() const { return samples_.size(); }
    double support_lo() const { return grid_.x(first_index()); }
    double support_hi() const { return grid_.x(last_index()); }
    double x(long i) const { return grid_.x(i); }

    const std::vector<complex>& samples() const { return samples_; }

    /// Sample at grid index @p i; zero off the support.
    complex at(long i) const {
        if (i < first_ || i > last_index()) return {};
        return samples_[static_cast<std::size_t>(i - first_)];
    }

    /// Mutable access; @p i must lie in the support.
    complex& ref(long i) { return samples_.at(static_cast<std::size_t>(i - first_)); }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : samples_) m = std::max(m, std::abs(v));
        return m;
    }

    double max_abs_imag() const {
        double m = 0.0;
        for (const auto& v : samples_) m = std::max(m, std::abs(v.imag()));
        return m;
    }

    bool is_real(double tol = 1e-13) const { return max_abs_imag() < tol; }

    /// Zero imaginary parts when every one is below @p tol.
    SampledWindow& drop_imaginary(double tol = 1e-13) {
        if (is_real(tol))
            for (auto& v : samples_) v = complex(v.real(), 0.0);
        return *this;
    }

    /// Removes edge samples with magnitude below @p tol (keeps at least one sample).
    SampledWindow& trim(double tol) {
        std::size_t lo = 0, hi = samples_.size();
        while (lo + 1 < hi && std::abs(samples_[lo]) < tol) ++lo;
        while (hi - 1 > lo && std::abs(samples_[hi - 1]) < tol) --hi;
        if (lo > 0 || hi < samples_.size()) {
            samples_ = std::vector<complex>(samples_.begin() + static_cast<long>(lo),
                                            samples_.begin() + static_cast<long>(hi));
            first_ += static_cast<long>(lo);
        }
        return *this;
    }

    /// Same function on a wider index range [first, last] (must contain the support).
    SampledWindow widened(long first, long last) const {
        first = std::min(first, first_);
        last = std::max(last, last_index());
        auto out = zeros(grid_, first, last);
        for (long i = first_; i <= last_index(); ++i) out.ref(i) = at(i);
        return out;
    }

    SampledWindow& operator*=(complex c) {
        for (auto& v : samples_) v *= c;
        return *this;
    }

    SampledWindow& operator+=(const SampledWindow& o) { return axpy(complex(1.0), o); }
    SampledWindow& operator-=(const SampledWindow& o) { return axpy(complex(-1.0), o); }

    /// this += c * o, growing the support to the union of both.
    SampledWindow& axpy(complex c, const SampledWindow& o) {
        require_same_grid(o, "window arithmetic");
        if (o.first_ < first_ || o.last_index() > last_index())
            *this = widened(o.first_, o.last_index());
        for (long i = o.first_; i <= o.last_index(); ++i) ref(i) += c * o.at(i);
        return *this;
    }

    friend SampledWindow operator+(SampledWindow a, const SampledWindow& b) { return a += b; }
    friend SampledWindow operator-(SampledWindow a, const SampledWindow& b) { return a -= b; }
    friend SampledWindow operator*(complex c, SampledWindow a) { return a *= c; }
    friend SampledWindow operator*(double c, SampledWindow a) { return a *= complex(c); }

    void require_same_grid(const SampledWindow& o, const char* what) const {
        if (!grid_.compatible(o.grid_))
            throw ShapeError(std::string(what) + ": grid step mismatch ("
                             + std::to_string(step()) + " vs " + std::to_string(o.step()) + ")");
    }

private:
    GridSpec grid_;
    long first_ = 0;
    std::vector<complex> samples_;
};

/// Max-abs pointwise difference over the union of supports.
inline double max_abs_difference(const SampledWindow& u, const SampledWindow& v) {
    u.require_same_grid(v, "max_abs_difference");
    const long lo = std::min(u.first_index(), v.first_index());
    const long hi = std::max(u.last_index(), v.last_index());
    double m = 0.0;
    for (long i = lo; i <= hi; ++i) m = std::max(m, std::abs(u.at(i) - v.at(i)));
    return m;
}

} // namespace gabordual
