#include "gfde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gfde {

SpaceGrid::SpaceGrid(double a_, double b_, int N_) {
    if (!(a_ < b_) || !std::isfinite(a_) || !std::isfinite(b_)) {
        throw DomainError("SpaceGrid requires a < b");
    }
    if (N_ < 2) throw DomainError("SpaceGrid requires N >= 2");
    a = a_;
    b = b_;
    N = N_;
    dx = (b - a) / N;
    x_nodes.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        x_nodes[i] = a + (b - a) * i / N;
    }
}

double TridiagonalSystem::dominance_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        if (i > 0) off += std::abs(sub[i]);
        if (i < n - 1) off += std::abs(sup[i]);
        gap = std::min(gap, std::abs(diag[i]) - off);
    }
    return gap;
}

bool StabilityReport::all_within_bound() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const StabilityRow& r) { return r.within_bound; });
}

double StabilityReport::worst_amplification() const {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.amplification);
    return worst;
}

double StabilityReport::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) g = std::min(g, r.gap);
    return g;
}

SolutionField build_grids(const GfdeProblem& problem, int M, int N,
                          std::vector<std::string>* warnings) {
    const auto report = validate_pair(problem.scale, problem.weight, problem.T, M);
    if (!report.ok()) throw DomainError("inadmissible scale/weight pair: " + report.failure);
    if (warnings) {
        warnings->insert(warnings->end(), report.warnings.begin(), report.warnings.end());
    }
    if (!problem.initial || !problem.left_bc || !problem.right_bc) {
        throw DomainError("problem must define initial and boundary data");
    }

    SolutionField field;
    field.time = TimeGrid(problem.scale, problem.weight, problem.T, M);
    field.space = SpaceGrid(problem.x_left, problem.x_right, N);
    field.u.assign(static_cast<size_t>(M + 1) * (N + 1), 0.0);

    for (int i = 0; i <= N; ++i) {
        field.at(0, i) = problem.initial(field.space.x_nodes[i]);
    }
    for (int j = 0; j <= M; ++j) {
        field.at(j, 0) = problem.left_bc(field.time.t_nodes[j]);
        field.at(j, N) = problem.right_bc(field.time.t_nodes[j]);
    }

    if (warnings) {
        const double tol = 1e-10;
        const double phi_a = problem.initial(problem.x_left);
        const double phi_b = problem.initial(problem.x_right);
        const double f1_0 = problem.left_bc(0.0);
        const double f2_0 = problem.right_bc(0.0);
        if (std::abs(phi_a - f1_0) > tol * (1.0 + std::abs(phi_a))) {
            warnings->push_back("corner incompatibility: phi(a) != f1(0)");
        }
        if (std::abs(phi_b - f2_0) > tol * (1.0 + std::abs(phi_b))) {
            warnings->push_back("corner incompatibility: phi(b) != f2(0)");
        }
    }
    return field;
}

TridiagonalSystem assemble_step(const SolutionField& field, int j,
                                const StepCoefficients& coeffs, const GfdeProblem& problem) {
    const int M = field.time.M;
    const int N = field.space.N;
    if (j != coeffs.j) throw DomainError("assemble_step: coefficients were built for step " +
                                         std::to_string(coeffs.j) + ", not " + std::to_string(j));
    if (j < 0 || j > M - 1) throw DomainError("assemble_step: step index out of range");

    const double mu = problem.delta / (field.space.dx * field.space.dx);
    const double unknown_coef = (j == 0) ? coeffs.p_first : coeffs.c[j - 1];

    TridiagonalSystem sys;
    sys.n = N - 1;
    sys.sub.assign(sys.n, -mu);
    sys.sup.assign(sys.n, -mu);
    sys.diag.assign(sys.n, unknown_coef + 2.0 * mu);
    sys.sub[0] = 0.0;
    sys.sup[sys.n - 1] = 0.0;
    sys.rhs.assign(sys.n, 0.0);

    const double t_next = field.time.t_nodes[j + 1];
    for (int i = 1; i <= N - 1; ++i) {
        sys.rhs[i - 1] = problem.forcing(field.space.x_nodes[i], t_next);
    }

    // History contribution.  Fusing the operator's per-interval weights into
    // one coefficient per stored row m turns the accumulation into a single
    // pass over the history:
    //   lhs_m = [m==1] p_j - [m==0] q_j + a_{m+1} - b_m + c_{m-1}
    // (each piece only where its index is in range, and the c_j term that
    // carries the unknown level is excluded).
    std::vector<double> lhs(j + 1, 0.0);
    lhs[0] -= coeffs.q_first;
    if (j >= 1) lhs[1] += coeffs.p_first;
    for (int k = 1; k <= j; ++k) {
        lhs[k - 1] += coeffs.a[k - 1];
        lhs[k] -= coeffs.b[k - 1];
        if (k + 1 <= j) lhs[k + 1] += coeffs.c[k - 1];
    }
    for (int m = 0; m <= j; ++m) {
        const double w = lhs[m];
        if (w == 0.0) continue;
        const auto row = field.row(m);
        for (int i = 1; i <= N - 1; ++i) {
            sys.rhs[i - 1] -= w * row[i];
        }
    }

    // Dirichlet values at the new level
    sys.rhs[0] += mu * field.at(j + 1, 0);
    sys.rhs[sys.n - 1] += mu * field.at(j + 1, N);

    if (!(sys.dominance_gap() > 0.0)) {
        throw NumericalError("assembled system lost strict diagonal dominance at step " +
                             std::to_string(j));
    }
    return sys;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys) {
    const int n = sys.n;
    if (n < 1) throw DomainError("thomas_solve: empty system");
    std::vector<double> c_star(n, 0.0), d_star(n, 0.0), x(n, 0.0);

    double denom = sys.diag[0];
    if (denom == 0.0) throw NumericalError("thomas_solve: zero pivot at row 0");
    c_star[0] = (n > 1) ? sys.sup[0] / denom : 0.0;
    d_star[0] = sys.rhs[0] / denom;
    for (int i = 1; i < n; ++i) {
        denom = sys.diag[i] - sys.sub[i] * c_star[i - 1];
        if (denom == 0.0) {
            throw NumericalError("thomas_solve: zero pivot at row " + std::to_string(i));
        }
        if (i < n - 1) c_star[i] = sys.sup[i] / denom;
        d_star[i] = (sys.rhs[i] - sys.sub[i] * d_star[i - 1]) / denom;
    }
    x[n - 1] = d_star[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        x[i] = d_star[i] - c_star[i] * x[i + 1];
    }
    return x;
}

StabilityRow stability_diagnostics(const TridiagonalSystem& sys, double history_scalar) {
    StabilityRow row;
    row.gap = sys.dominance_gap();
    if (row.gap > 0.0) {
        row.inverse_bound = 1.0 / row.gap;
        row.amplification = std::abs(history_scalar) / row.gap;
    } else {
        row.inverse_bound = std::numeric_limits<double>::infinity();
        row.amplification = std::numeric_limits<double>::infinity();
    }
    // the gap is reconstructed from the assembled diagonal as
    // (coef + 2 mu) - 2 mu, which absorbs up to eps * mu / coef of relative
    // precision on fine spatial grids; the flag allows for that
    row.within_bound = row.gap > 0.0 && row.amplification <= 1.0 + 1e-6;
    return row;
}

MarchResult march(const GfdeProblem& problem, int M, int N, bool collect_diagnostics) {
    if (!problem.forcing) throw DomainError("problem must define a forcing term");
    MarchResult result;
    result.field = build_grids(problem, M, N);
    if (collect_diagnostics) result.stability.emplace();

    SolutionField& field = result.field;
    for (int j = 0; j < M; ++j) {
        const auto coeffs = StepCoefficients::compute(field.time, j, problem.alpha);
        const auto sys = assemble_step(field, j, coeffs, problem);
        const auto interior = thomas_solve(sys);
        for (int i = 1; i <= N - 1; ++i) {
            const double v = interior[i - 1];
            if (!std::isfinite(v)) {
                throw NumericalError("non-finite solution value at step " + std::to_string(j) +
                                     ", node " + std::to_string(i));
            }
            field.at(j + 1, i) = v;
        }
        if (collect_diagnostics) {
            // scalar multiplying the previous time level in the one-step
            // error recursion; the first-interval coefficient plays the
            // role of c_0^j
            double scalar = 0.0;
            if (j == 0) {
                scalar = coeffs.q_first;
            } else if (j == 1) {
                scalar = coeffs.p_first - coeffs.b[0];
            } else {
                scalar = coeffs.c[j - 2] - coeffs.b[j - 1];
            }
            StabilityRow row = stability_diagnostics(sys, scalar);
            row.step = j;
            result.stability->rows.push_back(row);
        }
    }
    return result;
}

}  // namespace gfde
