#pragma once

#include <functional>

namespace gfde {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int levels = 0;
    bool converged = false;
};

/// Tanh-sinh (double-exponential) quadrature on [a, b].
///
/// The integrand is called as f(x, b_minus_x); the second argument is the
/// distance to the right endpoint computed without cancellation, so kernels
/// with an integrable singularity at x = b stay evaluable arbitrarily close
/// to it.  Node levels are doubled until successive estimates differ by at
/// most abs_tol.
QuadratureResult tanh_sinh(const std::function<double(double, double)>& f,
                           double a, double b, double abs_tol, int max_levels = 12);

}  // namespace gfde
