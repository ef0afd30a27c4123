/**
 * @file errors.hpp
 * @brief Exception types shared by the frame and Gabor modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace gabordual {

/// Family whose frame operator is singular (lower bound not positive).
struct NotAFrameError : std::domain_error {
    explicit NotAFrameError(const std::string& what) : std::domain_error(what) {}
};

/// Relaxation parameter with ||I - lambda S|| >= 1.
struct ContractionError : std::domain_error {
    explicit ContractionError(const std::string& what) : std::domain_error(what) {}
};

/// A family or window expected to be dual failed the duality check.
struct DualityError : std::domain_error {
    explicit DualityError(const std::string& what) : std::domain_error(what) {}
};

/// Shape, dimension or grid incompatibility between operands.
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace gabordual
