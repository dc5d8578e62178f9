#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfde/gfd.hpp"

namespace gfde {

struct SpaceGrid {
    double a = 0.0, b = 0.0;
    int N = 0;
    double dx = 0.0;
    std::vector<double> x_nodes;

    SpaceGrid() = default;
    SpaceGrid(double a, double b, int N);
};

/// One initial-boundary-value problem
///   GFD_t^alpha u = delta u_xx + f   on [x_left, x_right] x (0, T],
///   u(x, 0) = phi(x),  u(x_left, t) = f1(t),  u(x_right, t) = f2(t).
/// `exact` may be empty; error measurement requires it.
struct GfdeProblem {
    double alpha = 0.5;
    double delta = 1.0;
    ScaleFamily scale;
    WeightFamily weight;
    double x_left = 0.0;
    double x_right = 1.0;
    double T = 1.0;
    std::function<double(double, double)> forcing;  // f(x, t)
    std::function<double(double)> initial;          // phi(x)
    std::function<double(double)> left_bc;          // f1(t)
    std::function<double(double)> right_bc;         // f2(t)
    std::function<double(double, double)> exact;    // u(x, t), optional
};

struct TridiagonalSystem {
    int n = 0;
    std::vector<double> sub;   // sub[i] couples row i to i-1 (sub[0] unused)
    std::vector<double> diag;
    std::vector<double> sup;   // sup[i] couples row i to i+1 (sup[n-1] unused)
    std::vector<double> rhs;

    /// min_i (|diag_i| - |sub_i| - |sup_i|); positive iff strictly
    /// diagonally dominant.
    double dominance_gap() const;
};

/// Solution lattice u[j][i], row j = time level t_j.
struct SolutionField {
    TimeGrid time;
    SpaceGrid space;
    std::vector<double> u;  // (M+1) x (N+1), row-major

    double at(int j, int i) const { return u[static_cast<size_t>(j) * (space.N + 1) + i]; }
    double& at(int j, int i) { return u[static_cast<size_t>(j) * (space.N + 1) + i]; }
    std::span<const double> row(int j) const {
        return {u.data() + static_cast<size_t>(j) * (space.N + 1),
                static_cast<size_t>(space.N + 1)};
    }
    std::span<double> row(int j) {
        return {u.data() + static_cast<size_t>(j) * (space.N + 1),
                static_cast<size_t>(space.N + 1)};
    }
};

/// Per-step stability diagnostics in the sense of the dominance-gap bound:
/// amplification = |history scalar| / gap estimates the norm of one error
/// propagation step; within_bound records amplification <= 1 (with a 1e-6
/// relative allowance for roundoff in the matrix-derived gap).
struct StabilityRow {
    int step = 0;  // the solve producing level step+1
    double gap = 0.0;
    double inverse_bound = 0.0;   // 1 / gap
    double amplification = 0.0;
    bool within_bound = false;
};

struct StabilityReport {
    std::vector<StabilityRow> rows;

    bool all_within_bound() const;
    double worst_amplification() const;
    double min_gap() const;
};

/// Builds the grids and a field with row 0 set from phi and the boundary
/// columns filled from f1, f2 for all time levels; interior rows are zero.
/// Validates the scale/weight pair (hard violations throw DomainError) and
/// appends soft findings -- including corner incompatibility between phi
/// and the boundary data -- to `warnings` when given.
SolutionField build_grids(const GfdeProblem& problem, int M, int N,
                          std::vector<std::string>* warnings = nullptr);

/// Tridiagonal system for the N-1 interior unknowns at level j+1, given
/// complete history rows 0..j.  Dirichlet values enter the right-hand side.
TridiagonalSystem assemble_step(const SolutionField& field, int j,
                                const StepCoefficients& coeffs, const GfdeProblem& problem);

/// Thomas elimination; requires the strict diagonal dominance the assembly
/// guarantees.  Residual max-norm <= 1e-12 (||rhs|| + 1).
std::vector<double> thomas_solve(const TridiagonalSystem& sys);

StabilityRow stability_diagnostics(const TridiagonalSystem& sys, double history_scalar);

struct MarchResult {
    SolutionField field;
    std::optional<StabilityReport> stability;
};

/// Full implicit time march: repeated assemble + solve for rows 1..M.
/// Deterministic; throws NumericalError if a step produces non-finite
/// values.
MarchResult march(const GfdeProblem& problem, int M, int N, bool collect_diagnostics = false);

}  // namespace gfde
