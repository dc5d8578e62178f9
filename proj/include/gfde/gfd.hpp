#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gfde/funcs.hpp"

namespace gfde {

/// Uniform partition of [0, T] into M steps with the scale and weight
/// values cached at the nodes.
struct TimeGrid {
    double T = 0.0;
    int M = 0;
    double dt = 0.0;
    std::vector<double> t_nodes;  // t_j = j T / M
    std::vector<double> z_nodes;  // z(t_j), strictly increasing
    std::vector<double> w_nodes;  // w(t_j), all positive

    TimeGrid() = default;
    TimeGrid(const ScaleFamily& z, const WeightFamily& w, double T, int M);
};

struct PqIncrements {
    double p = 0.0;  // (z_{j+1} - z_k)^{1-a} - (z_{j+1} - z_{k+1})^{1-a}
    double q = 0.0;  // same with exponent 2-a
};

/// Kernel increments for the interval [z_k, z_{k+1}] seen from level j+1.
/// Requires 0 <= k <= j <= M-1; both values are strictly positive (the
/// vanishing term at k = j is set to exactly zero, not evaluated as 0^x).
PqIncrements pq_increments(const TimeGrid& grid, int j, int k, double alpha);

struct QuadCoeffs {
    double a = 0.0, b = 0.0, c = 0.0;  // weights on u_{k-1}, u_k, u_{k+1}
    double A = 0.0, B = 0.0, C = 0.0;  // scale-only cores, C > B > A > 0
};

/// Quadratic-interpolation coefficients for history interval k at step j
/// (1 <= k <= j <= M-1).  With an increasing positive weight all six values
/// are positive and the cores are ordered C > B > A.
QuadCoeffs quad_coeffs(const TimeGrid& grid, int j, int k, double alpha);

struct FirstCoeffs {
    double p = 0.0;  // multiplies u_1
    double q = 0.0;  // multiplies u_0
};

/// Linear-interpolation coefficients for the first interval [t_0, t_1] as
/// seen from level j+1; p/q = w_1/w_0.
FirstCoeffs first_coeffs(const TimeGrid& grid, int j, double alpha);

/// All coefficients needed to advance one time step (building level j+1).
struct StepCoefficients {
    int j = -1;
    double alpha = 0.0;
    double p_first = 0.0;
    double q_first = 0.0;
    // history coefficients for k = 1..j, stored at index k-1
    std::vector<double> a, b, c;
    std::vector<double> A, B, C;

    static StepCoefficients compute(const TimeGrid& grid, int j, double alpha);
};

/// Discrete generalized fractional derivative of a nodal time series
/// u_0..u_{j+1} evaluated at t_{j+1}:
///   p_j u_1 - q_j u_0 + sum_{k=1..j} (a_k u_{k-1} - b_k u_k + c_k u_{k+1}).
/// The series length must be j+2.
double gfd_apply(std::span<const double> series, const TimeGrid& grid, int j, double alpha);
double gfd_apply(std::span<const double> series, const TimeGrid& grid,
                 const StepCoefficients& coeffs);

/// A continuously differentiable function of time together with its
/// derivative; the reference operator needs (w g)' analytically.
struct TimeFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
};

/// Continuous-definition reference value of the generalized fractional
/// derivative,
///   w(t)^{-1} / Gamma(1-a) * int_0^t (w g)'(tau) (z(t) - z(tau))^{-a} dtau,
/// by tanh-sinh quadrature with estimated absolute error <= tol.  Throws
/// NumericalError (reporting the achieved estimate) if refinement fails to
/// reach tol.
double gfd_reference(const TimeFunction& g, const ScaleFamily& z, const WeightFamily& w,
                     double alpha, double t, double tol);

}  // namespace gfde
