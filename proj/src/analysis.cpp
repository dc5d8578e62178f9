#include "gfde/analysis.hpp"

#include <cmath>
#include <limits>

namespace gfde {

namespace {

double row_max_error(const SolutionField& field, int j,
                     const std::function<double(double, double)>& exact) {
    double worst = 0.0;
    const double t = field.time.t_nodes[j];
    for (int i = 0; i <= field.space.N; ++i) {
        worst = std::max(worst, std::abs(field.at(j, i) - exact(field.space.x_nodes[i], t)));
    }
    return worst;
}

}  // namespace

double max_abs_error(const SolutionField& field,
                     const std::function<double(double, double)>& exact) {
    if (!exact) throw DomainError("max_abs_error requires an exact solution");
    double worst = 0.0;
    for (int j = 0; j <= field.time.M; ++j) {
        worst = std::max(worst, row_max_error(field, j, exact));
    }
    return worst;
}

double final_time_abs_error(const SolutionField& field,
                            const std::function<double(double, double)>& exact) {
    if (!exact) throw DomainError("final_time_abs_error requires an exact solution");
    return row_max_error(field, field.time.M, exact);
}

std::optional<double> convergence_order(double mae_coarse, double mae_fine) {
    if (!(mae_coarse > 0.0) || !(mae_fine > 0.0)) return std::nullopt;
    return std::log2(mae_coarse / mae_fine);
}

ConvergenceReport run_refinement_study(const GfdeProblem& problem, const StudySchedule& schedule,
                                       const std::string& case_name) {
    if (schedule.levels < 2) throw DomainError("refinement study requires levels >= 2");
    if (!problem.exact) throw DomainError("refinement study requires an exact solution");

    ConvergenceReport report;
    report.alpha = problem.alpha;
    report.delta = problem.delta;
    report.case_name = case_name;
    report.scale_name = problem.scale.name();
    report.weight_name = problem.weight.name();

    double worst_amp = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    bool have_diag = false;

    for (int level = 0; level < schedule.levels; ++level) {
        const int factor = 1 << level;
        const int M =
            schedule.base_M * (schedule.mode != RefineMode::SpaceOnly ? factor : 1);
        const int N = schedule.base_N * (schedule.mode != RefineMode::TimeOnly ? factor : 1);
        try {
            const auto run = march(problem, M, N, schedule.collect_diagnostics);
            ReportRow row;
            row.dt = problem.T / M;
            row.dx = (problem.x_right - problem.x_left) / N;
            row.mae = schedule.scope == ErrorScope::Global
                          ? max_abs_error(run.field, problem.exact)
                          : final_time_abs_error(run.field, problem.exact);
            if (!report.rows.empty()) {
                row.co = convergence_order(report.rows.back().mae, row.mae);
            }
            report.rows.push_back(row);
            if (run.stability) {
                have_diag = true;
                worst_amp = std::max(worst_amp, run.stability->worst_amplification());
                min_gap = std::min(min_gap, run.stability->min_gap());
                report.stability_within_bound =
                    report.stability_within_bound && run.stability->all_within_bound();
            }
        } catch (const std::exception& e) {
            if (report.rows.empty()) throw;
            report.abort_error = e.what();
            break;
        }
    }
    if (have_diag) {
        report.worst_amplification = worst_amp;
        report.min_gap = min_gap;
    }
    return report;
}

ConvergenceReport run_operator_study(const OperatorCase& op_case, int levels, double base_dt,
                                     double oracle_tol) {
    if (levels < 2) throw DomainError("operator study requires levels >= 2");
    if (!(base_dt > 0.0)) throw DomainError("operator study requires base_dt > 0");
    const double steps = op_case.t_eval / base_dt;
    const int base_M = static_cast<int>(std::lround(steps));
    if (base_M < 1 || std::abs(steps - base_M) > 1e-9) {
        throw DomainError("t_eval must be an integer multiple of base_dt");
    }

    const double reference = gfd_reference(op_case.g, op_case.scale, op_case.weight,
                                           op_case.alpha, op_case.t_eval, oracle_tol);

    ConvergenceReport report;
    report.alpha = op_case.alpha;
    report.case_name = op_case.name;
    report.scale_name = op_case.scale.name();
    report.weight_name = op_case.weight.name();

    for (int level = 0; level < levels; ++level) {
        const int M = base_M * (1 << level);
        TimeGrid grid(op_case.scale, op_case.weight, op_case.t_eval, M);
        std::vector<double> series(M + 1);
        for (int m = 0; m <= M; ++m) series[m] = op_case.g.value(grid.t_nodes[m]);
        const double approx = gfd_apply(series, grid, M - 1, op_case.alpha);

        ReportRow row;
        row.dt = op_case.t_eval / M;
        row.mae = std::abs(approx - reference);
        if (!report.rows.empty()) {
            row.co = convergence_order(report.rows.back().mae, row.mae);
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace gfde
