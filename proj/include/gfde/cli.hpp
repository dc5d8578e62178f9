#pragma once

#include <iosfwd>
#include <string>

#include "gfde/catalog.hpp"

namespace gfde::cli {

enum class Command { Solve, Study, Operator, List, Verify };
enum class OutputFormat { Csv, Md };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;       // bad flags / config file / case
inline constexpr int kExitNumerical = 3;    // solver or quadrature failure
inline constexpr int kExitConsistency = 4;  // verify found a large residual

struct RunConfig {
    Command command = Command::List;
    CaseId case_id = CaseId::Ex1;
    bool has_case = false;
    double alpha = -1.0;  // negative: use the case default
    double delta = 1.0;
    int nt = 10;
    int nx = 10;
    int levels = 5;
    RefineMode refine = RefineMode::Both;
    ErrorScope scope = ErrorScope::Global;
    OutputFormat format = OutputFormat::Csv;
    std::string out_path;  // empty: stdout
    bool diagnostics = false;
    bool ex4_printed_forcing = false;
    double verify_tol = 1e-8;

    double resolved_alpha() const;
};

/// Parses argv (plus an optional --config JSON file whose keys mirror the
/// flag names; explicit flags win).  Throws DomainError on invalid input,
/// naming the offending key.
RunConfig parse_config(int argc, const char* const* argv);

/// Runs one parsed configuration; artifacts go to `out`, notes to `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Complete entry point: parse + execute with errors mapped to exit codes.
int run_main(int argc, const char* const* argv);

std::string render_report(const ConvergenceReport& report, OutputFormat format);
std::string render_field_csv(const SolutionField& field,
                             const std::function<double(double, double)>& exact);
std::string render_stability_csv(const StabilityReport& report);
std::string render_consistency_csv(const ConsistencyReport& report);

/// Inverse of render_report's csv form, for round-trip checks.
ConvergenceReport parse_report_csv(const std::string& text);

}  // namespace gfde::cli
