#include "gfde/gfd.hpp"

#include <cmath>
#include <sstream>

#include "gfde/quadrature.hpp"

namespace gfde {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw DomainError("alpha must lie in (0,1)");
    }
}

void check_step_range(const TimeGrid& grid, int j) {
    if (j < 0 || j > grid.M - 1) {
        throw DomainError("step index j = " + std::to_string(j) + " outside [0, M-1] with M = " +
                          std::to_string(grid.M));
    }
}

}  // namespace

TimeGrid::TimeGrid(const ScaleFamily& z, const WeightFamily& w, double T_, int M_) {
    if (!(T_ > 0.0) || !std::isfinite(T_)) throw DomainError("TimeGrid requires T > 0");
    if (M_ < 1) throw DomainError("TimeGrid requires M >= 1");
    T = T_;
    M = M_;
    dt = T / M;
    t_nodes.resize(M + 1);
    z_nodes.resize(M + 1);
    w_nodes.resize(M + 1);
    for (int j = 0; j <= M; ++j) {
        t_nodes[j] = T * j / M;
        z_nodes[j] = eval_scale(z, t_nodes[j]);
        w_nodes[j] = eval_weight(w, t_nodes[j]);
        if (!std::isfinite(z_nodes[j]) || z_nodes[j] < 0.0) {
            throw DomainError("scale value inadmissible at node " + std::to_string(j));
        }
        if (!std::isfinite(w_nodes[j]) || !(w_nodes[j] > 0.0)) {
            throw DomainError("weight value inadmissible at node " + std::to_string(j));
        }
        if (j > 0 && !(z_nodes[j] > z_nodes[j - 1])) {
            throw DomainError("scale nodes are not strictly increasing at node " +
                              std::to_string(j));
        }
    }
}

PqIncrements pq_increments(const TimeGrid& grid, int j, int k, double alpha) {
    check_alpha(alpha);
    check_step_range(grid, j);
    if (k < 0 || k > j) {
        throw DomainError("interval index k = " + std::to_string(k) + " outside [0, j]");
    }
    const double yk = grid.z_nodes[j + 1] - grid.z_nodes[k];
    PqIncrements r;
    if (k == j) {
        // the (z_{j+1} - z_{k+1}) term vanishes identically
        r.p = std::pow(yk, 1.0 - alpha);
        r.q = std::pow(yk, 2.0 - alpha);
        return r;
    }
    const double yk1 = grid.z_nodes[j + 1] - grid.z_nodes[k + 1];
    r.p = std::pow(yk, 1.0 - alpha) - std::pow(yk1, 1.0 - alpha);
    r.q = std::pow(yk, 2.0 - alpha) - std::pow(yk1, 2.0 - alpha);
    return r;
}

QuadCoeffs quad_coeffs(const TimeGrid& grid, int j, int k, double alpha) {
    check_alpha(alpha);
    check_step_range(grid, j);
    if (k < 1 || k > j) {
        throw DomainError("history index k = " + std::to_string(k) + " outside [1, j]");
    }
    const auto& z = grid.z_nodes;
    const double dz_prev = z[k] - z[k - 1];
    const double dz_next = z[k + 1] - z[k];
    const double dz_wide = z[k + 1] - z[k - 1];
    if (!(dz_prev > 0.0) || !(dz_next > 0.0)) {
        throw DomainError("degenerate grid: duplicate scale nodes around k = " +
                          std::to_string(k));
    }
    const auto pq = pq_increments(grid, j, k, alpha);
    const double two_zj1 = 2.0 * z[j + 1];

    QuadCoeffs r;
    r.A = (2.0 - alpha) * (two_zj1 - z[k] - z[k + 1]) * pq.p - 2.0 * (1.0 - alpha) * pq.q;
    r.B = (2.0 - alpha) * (two_zj1 - z[k - 1] - z[k + 1]) * pq.p - 2.0 * (1.0 - alpha) * pq.q;
    r.C = (2.0 - alpha) * (two_zj1 - z[k - 1] - z[k]) * pq.p - 2.0 * (1.0 - alpha) * pq.q;

    const double scale = 1.0 / (grid.w_nodes[j + 1] * gamma_fn(3.0 - alpha));
    r.a = grid.w_nodes[k - 1] * r.A * scale / (dz_prev * dz_wide);
    r.b = grid.w_nodes[k] * r.B * scale / (dz_prev * dz_next);
    r.c = grid.w_nodes[k + 1] * r.C * scale / (dz_wide * dz_next);
    return r;
}

FirstCoeffs first_coeffs(const TimeGrid& grid, int j, double alpha) {
    check_alpha(alpha);
    check_step_range(grid, j);
    const auto p0 = pq_increments(grid, j, 0, alpha).p;
    const double denom =
        grid.w_nodes[j + 1] * gamma_fn(2.0 - alpha) * (grid.z_nodes[1] - grid.z_nodes[0]);
    return {grid.w_nodes[1] * p0 / denom, grid.w_nodes[0] * p0 / denom};
}

StepCoefficients StepCoefficients::compute(const TimeGrid& grid, int j, double alpha) {
    check_alpha(alpha);
    check_step_range(grid, j);
    const auto& z = grid.z_nodes;
    const auto& w = grid.w_nodes;

    StepCoefficients sc;
    sc.j = j;
    sc.alpha = alpha;

    // Shared power table: P_k = (z_{j+1} - z_k)^{1-a}, Q_k with 2-a,
    // with the k = j+1 entries exactly zero.
    std::vector<double> P(j + 2), Q(j + 2);
    for (int k = 0; k <= j; ++k) {
        const double y = z[j + 1] - z[k];
        P[k] = std::pow(y, 1.0 - alpha);
        Q[k] = std::pow(y, 2.0 - alpha);
    }
    P[j + 1] = 0.0;
    Q[j + 1] = 0.0;

    const double inv_g2 = 1.0 / (w[j + 1] * gamma_fn(2.0 - alpha) * (z[1] - z[0]));
    sc.p_first = w[1] * (P[0] - P[1]) * inv_g2;
    sc.q_first = w[0] * (P[0] - P[1]) * inv_g2;

    sc.a.resize(j);
    sc.b.resize(j);
    sc.c.resize(j);
    sc.A.resize(j);
    sc.B.resize(j);
    sc.C.resize(j);
    const double inv_g3 = 1.0 / (w[j + 1] * gamma_fn(3.0 - alpha));
    const double two_zj1 = 2.0 * z[j + 1];
    for (int k = 1; k <= j; ++k) {
        const double p = P[k] - P[k + 1];
        const double q = Q[k] - Q[k + 1];
        const double A = (2.0 - alpha) * (two_zj1 - z[k] - z[k + 1]) * p - 2.0 * (1.0 - alpha) * q;
        const double B =
            (2.0 - alpha) * (two_zj1 - z[k - 1] - z[k + 1]) * p - 2.0 * (1.0 - alpha) * q;
        const double C = (2.0 - alpha) * (two_zj1 - z[k - 1] - z[k]) * p - 2.0 * (1.0 - alpha) * q;
        const double dz_prev = z[k] - z[k - 1];
        const double dz_next = z[k + 1] - z[k];
        const double dz_wide = z[k + 1] - z[k - 1];
        sc.A[k - 1] = A;
        sc.B[k - 1] = B;
        sc.C[k - 1] = C;
        sc.a[k - 1] = w[k - 1] * A * inv_g3 / (dz_prev * dz_wide);
        sc.b[k - 1] = w[k] * B * inv_g3 / (dz_prev * dz_next);
        sc.c[k - 1] = w[k + 1] * C * inv_g3 / (dz_wide * dz_next);
    }
    return sc;
}

double gfd_apply(std::span<const double> series, const TimeGrid& grid,
                 const StepCoefficients& coeffs) {
    const int j = coeffs.j;
    if (static_cast<int>(series.size()) != j + 2) {
        throw DomainError("gfd_apply: series length " + std::to_string(series.size()) +
                          " does not match j + 2 = " + std::to_string(j + 2));
    }
    check_step_range(grid, j);
    double acc = coeffs.p_first * series[1] - coeffs.q_first * series[0];
    for (int k = 1; k <= j; ++k) {
        acc += coeffs.a[k - 1] * series[k - 1] - coeffs.b[k - 1] * series[k] +
               coeffs.c[k - 1] * series[k + 1];
    }
    return acc;
}

double gfd_apply(std::span<const double> series, const TimeGrid& grid, int j, double alpha) {
    return gfd_apply(series, grid, StepCoefficients::compute(grid, j, alpha));
}

double gfd_reference(const TimeFunction& g, const ScaleFamily& z, const WeightFamily& w,
                     double alpha, double t, double tol) {
    check_alpha(alpha);
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("gfd_reference requires t >= 0");
    if (!(tol >= 1e-12)) throw DomainError("gfd_reference requires tol >= 1e-12");
    if (!g.value || !g.deriv) throw DomainError("gfd_reference requires g with a derivative");
    if (t == 0.0) return 0.0;

    const double w_t = eval_weight(w, t);
    const double prefactor = 1.0 / (w_t * gamma_fn(1.0 - alpha));
    auto integrand = [&](double tau, double t_minus_tau) {
        const double h_prime =
            eval_weight_deriv(w, tau) * g.value(tau) + eval_weight(w, tau) * g.deriv(tau);
        return h_prime * std::pow(scale_diff(z, t, tau, t_minus_tau), -alpha);
    };
    const auto quad = tanh_sinh(integrand, 0.0, t, tol / prefactor);
    if (!quad.converged) {
        std::ostringstream msg;
        msg << "gfd_reference quadrature did not reach tol = " << tol
            << "; achieved error estimate " << quad.error_estimate * prefactor << " after "
            << quad.levels << " levels";
        throw NumericalError(msg.str());
    }
    return prefactor * quad.value;
}

}  // namespace gfde
