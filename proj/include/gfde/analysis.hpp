#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfde/solver.hpp"

namespace gfde {

enum class RefineMode { Both, TimeOnly, SpaceOnly };

/// Which lattice slice the error is measured on.  Global is the default;
/// FinalTime restricts the max to the last time row (some reference
/// time-direction tables report that norm instead).
enum class ErrorScope { Global, FinalTime };

struct StudySchedule {
    RefineMode mode = RefineMode::Both;
    int base_M = 10;
    int base_N = 10;
    int levels = 5;  // each level halves the refined step(s)
    ErrorScope scope = ErrorScope::Global;
    bool collect_diagnostics = false;
};

struct ReportRow {
    double dt = 0.0;
    std::optional<double> dx;  // absent for operator studies
    double mae = 0.0;
    std::optional<double> co;  // absent on the first row
};

struct ConvergenceReport {
    std::vector<ReportRow> rows;
    double alpha = 0.0;
    double delta = 1.0;
    std::string case_name;
    std::string scale_name;
    std::string weight_name;
    std::string abort_error;  // non-empty when a level failed; earlier rows retained
    // filled when diagnostics were collected
    std::optional<double> worst_amplification;
    std::optional<double> min_gap;
    bool stability_within_bound = true;
};

/// Max |u_num - exact| over every grid node and time level.
double max_abs_error(const SolutionField& field,
                     const std::function<double(double, double)>& exact);

/// Same maximum restricted to the final time row.
double final_time_abs_error(const SolutionField& field,
                            const std::function<double(double, double)>& exact);

/// log2(mae_coarse / mae_fine); absent when either value is not positive.
std::optional<double> convergence_order(double mae_coarse, double mae_fine);

/// Marches the problem at each refinement level and tabulates (dt, dx,
/// MAE, CO).  A level that fails after at least one completed row aborts
/// the study, retaining the partial rows and recording the error.
ConvergenceReport run_refinement_study(const GfdeProblem& problem, const StudySchedule& schedule,
                                       const std::string& case_name = "");

/// One operator-approximation test: the discrete generalized fractional
/// derivative of g against the quadrature reference at a single evaluation
/// time.
struct OperatorCase {
    TimeFunction g;
    ScaleFamily scale;
    WeightFamily weight;
    double alpha = 0.5;
    double t_eval = 0.6;
    std::string name;
};

/// Error |discrete - reference| at t_eval per level, halving dt from
/// base_dt.  t_eval must be a node of the base grid.
ConvergenceReport run_operator_study(const OperatorCase& op_case, int levels,
                                     double base_dt = 0.1, double oracle_tol = 1e-10);

}  // namespace gfde
