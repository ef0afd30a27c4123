/**
 * @file duality_report.hpp
 * @brief Numerical certificate that one system is dual to another.
 */
#pragma once

#include <map>

namespace gabordual {

/**
 * Residuals of a duality test.
 *
 * For finite frames only max_residual is filled. For Gabor windows
 * per_k_residuals holds, for every lattice offset k examined, the sup over
 * one translation period of the pointwise duality defect.
 * Invariant: pass == (max_residual < tol).
 */
struct DualityReport {
    double max_residual = 0.0;
    std::map<long, double> per_k_residuals;
    bool pass = false;
    double tol = 0.0;
};

} // namespace gabordual
