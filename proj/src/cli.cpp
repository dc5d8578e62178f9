#include "gfde/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace gfde::cli {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

struct RawOptions {
    std::string case_name;
    double alpha = -1.0;
    double delta = 1.0;
    int nt = 10;
    int nx = 10;
    int levels = 5;
    std::string refine = "both";
    std::string scope = "global";
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
    bool diagnostics = false;
    bool ex4_printed_forcing = false;
    double tol = 1e-8;
};

double as_number(const nlohmann::json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return std::stod(v.get<std::string>());
        } catch (...) {
        }
    }
    throw DomainError("config key '" + key + "' must be a number");
}

int as_int(const nlohmann::json& v, const std::string& key) {
    const double d = as_number(v, key);
    const int i = static_cast<int>(std::lround(d));
    if (d != i) throw DomainError("config key '" + key + "' must be an integer");
    return i;
}

std::string as_string(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw DomainError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

bool as_bool(const nlohmann::json& v, const std::string& key) {
    if (!v.is_boolean()) throw DomainError("config key '" + key + "' must be a boolean");
    return v.get<bool>();
}

// Applies a flat JSON document whose keys mirror the flag names.  Called
// before the command line is parsed, so explicit flags override the file.
void apply_config_file(const std::string& path, RawOptions& raw) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const std::exception& e) {
        throw DomainError("malformed config file " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw DomainError("config file must hold a flat JSON object");

    for (const auto& [key, value] : doc.items()) {
        if (key == "case") raw.case_name = as_string(value, key);
        else if (key == "alpha") raw.alpha = as_number(value, key);
        else if (key == "delta") raw.delta = as_number(value, key);
        else if (key == "nt" || key == "fixed-nt") raw.nt = as_int(value, key);
        else if (key == "nx" || key == "fixed-nx") raw.nx = as_int(value, key);
        else if (key == "levels") raw.levels = as_int(value, key);
        else if (key == "refine") raw.refine = as_string(value, key);
        else if (key == "error-scope") raw.scope = as_string(value, key);
        else if (key == "format") raw.format = as_string(value, key);
        else if (key == "out") raw.out_path = as_string(value, key);
        else if (key == "diagnostics") raw.diagnostics = as_bool(value, key);
        else if (key == "ex4-printed-forcing") raw.ex4_printed_forcing = as_bool(value, key);
        else if (key == "tol") raw.tol = as_number(value, key);
        else throw DomainError("unknown config key '" + key + "'");
    }
}

std::optional<std::string> scan_for_config_path(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return std::nullopt;
}

struct ParseOutcome {
    RunConfig config;
    bool help = false;
    std::string help_text;
};

ParseOutcome parse_internal(int argc, const char* const* argv) {
    RawOptions raw;
    if (const auto path = scan_for_config_path(argc, argv)) {
        apply_config_file(*path, raw);
    }

    CLI::App app{"gfde: implicit solver for generalized time-fractional diffusion equations"};
    app.require_subcommand(1);

    auto add_common = [&raw](CLI::App* cmd) {
        cmd->add_option("--case", raw.case_name, "benchmark case id (see `gfde list`)");
        cmd->add_option("--alpha", raw.alpha, "fractional order in (0,1)");
        cmd->add_option("--delta", raw.delta, "diffusivity (default 1)");
        cmd->add_option("--nt,--fixed-nt", raw.nt, "time steps (base level for studies)");
        cmd->add_option("--nx,--fixed-nx", raw.nx, "space intervals (base level for studies)");
        cmd->add_option("--levels", raw.levels, "refinement levels (studies)");
        cmd->add_option("--refine", raw.refine, "refinement mode: both|time|space")
            ->check(CLI::IsMember({"both", "time", "space"}));
        cmd->add_option("--error-scope", raw.scope, "error norm scope: global|final")
            ->check(CLI::IsMember({"global", "final"}));
        cmd->add_option("--format", raw.format, "report format: csv|md")
            ->check(CLI::IsMember({"csv", "md"}));
        cmd->add_option("--out", raw.out_path, "output path (default stdout)");
        cmd->add_option("--tol", raw.tol, "residual threshold for verify");
        cmd->add_flag("--diagnostics", raw.diagnostics, "collect stability diagnostics");
        cmd->add_flag("--ex4-printed-forcing", raw.ex4_printed_forcing,
                      "use the alternative (inconsistent) ex4 forcing variant");
        cmd->add_option("--config", raw.config_path,
                        "JSON config file; keys mirror flag names, flags win");
    };

    CLI::App* solve = app.add_subcommand("solve", "march one case and dump the field");
    CLI::App* study = app.add_subcommand("study", "grid refinement study (MAE and CO table)");
    CLI::App* oper = app.add_subcommand("operator", "derivative-approximation study");
    CLI::App* list = app.add_subcommand("list", "list the built-in cases");
    CLI::App* verify = app.add_subcommand("verify", "manufactured-solution consistency check");
    for (CLI::App* cmd : {solve, study, oper, list, verify}) add_common(cmd);

    ParseOutcome outcome;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        outcome.help = true;
        std::ostringstream help;
        help << app.help();
        outcome.help_text = help.str();
        (void)e;
        return outcome;
    } catch (const CLI::ParseError& e) {
        throw DomainError(e.what());
    }

    RunConfig& cfg = outcome.config;
    if (solve->parsed()) cfg.command = Command::Solve;
    else if (study->parsed()) cfg.command = Command::Study;
    else if (oper->parsed()) cfg.command = Command::Operator;
    else if (list->parsed()) cfg.command = Command::List;
    else cfg.command = Command::Verify;

    if (!raw.case_name.empty()) {
        const auto id = parse_case_id(raw.case_name);
        if (!id) throw DomainError("unknown case '" + raw.case_name + "'");
        cfg.case_id = *id;
        cfg.has_case = true;
    }
    if (cfg.command != Command::List && !cfg.has_case) {
        throw DomainError("--case is required for this command");
    }

    cfg.alpha = raw.alpha;
    if (raw.alpha >= 0.0 && !(raw.alpha > 0.0 && raw.alpha < 1.0)) {
        throw DomainError("alpha must lie in (0,1)");
    }
    if (!(raw.delta > 0.0)) throw DomainError("delta must be > 0");
    cfg.delta = raw.delta;
    if (raw.nt < 1) throw DomainError("nt must be >= 1");
    if (raw.nx < 2) throw DomainError("nx must be >= 2");
    cfg.nt = raw.nt;
    cfg.nx = raw.nx;
    if ((cfg.command == Command::Study || cfg.command == Command::Operator) && raw.levels < 2) {
        throw DomainError("levels must be >= 2");
    }
    cfg.levels = raw.levels;
    cfg.refine = raw.refine == "time"    ? RefineMode::TimeOnly
                 : raw.refine == "space" ? RefineMode::SpaceOnly
                                         : RefineMode::Both;
    cfg.scope = raw.scope == "final" ? ErrorScope::FinalTime : ErrorScope::Global;
    cfg.format = raw.format == "md" ? OutputFormat::Md : OutputFormat::Csv;
    cfg.out_path = raw.out_path;
    cfg.diagnostics = raw.diagnostics;
    cfg.ex4_printed_forcing = raw.ex4_printed_forcing;
    if (!(raw.tol > 0.0)) throw DomainError("tol must be > 0");
    cfg.verify_tol = raw.tol;
    return outcome;
}

void write_artifact(const std::string& text, const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError("cannot write output file: " + path);
    file << text;
}

}  // namespace

double RunConfig::resolved_alpha() const {
    return alpha >= 0.0 ? alpha : default_alpha(case_id);
}

RunConfig parse_config(int argc, const char* const* argv) {
    auto outcome = parse_internal(argc, argv);
    if (outcome.help) throw DomainError("help requested");
    return outcome.config;
}

std::string render_report(const ConvergenceReport& report, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        out << "dt,dx,mae,co\n";
        for (const auto& row : report.rows) {
            out << fmt("%.10g", row.dt) << ',';
            if (row.dx) out << fmt("%.10g", *row.dx);
            out << ',' << fmt("%.9e", row.mae) << ',';
            if (row.co) out << fmt("%.4f", *row.co);
            out << '\n';
        }
    } else {
        out << "| dt | dx | mae | co |\n|---|---|---|---|\n";
        for (const auto& row : report.rows) {
            out << "| " << fmt("%.10g", row.dt) << " | "
                << (row.dx ? fmt("%.10g", *row.dx) : std::string()) << " | "
                << fmt("%.9e", row.mae) << " | " << (row.co ? fmt("%.4f", *row.co) : std::string())
                << " |\n";
        }
    }
    return out.str();
}

std::string render_field_csv(const SolutionField& field,
                             const std::function<double(double, double)>& exact) {
    std::ostringstream out;
    out << "x,t,u_num,u_exact,abs_err\n";
    for (int j = 0; j <= field.time.M; ++j) {
        const double t = field.time.t_nodes[j];
        for (int i = 0; i <= field.space.N; ++i) {
            const double x = field.space.x_nodes[i];
            const double u = field.at(j, i);
            out << fmt("%.10g", x) << ',' << fmt("%.10g", t) << ',' << fmt("%.12e", u) << ',';
            if (exact) {
                const double ue = exact(x, t);
                out << fmt("%.12e", ue) << ',' << fmt("%.3e", std::abs(u - ue));
            } else {
                out << ',';
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string render_stability_csv(const StabilityReport& report) {
    std::ostringstream out;
    out << "step,gap,inverse_bound,amplification,within_bound\n";
    for (const auto& row : report.rows) {
        out << row.step << ',' << fmt("%.9e", row.gap) << ',' << fmt("%.9e", row.inverse_bound)
            << ',' << fmt("%.9e", row.amplification) << ',' << (row.within_bound ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string render_consistency_csv(const ConsistencyReport& report) {
    std::ostringstream out;
    out << "x,t,residual\n";
    for (const auto& probe : report.probes) {
        out << fmt("%.10g", probe.x) << ',' << fmt("%.10g", probe.t) << ','
            << fmt("%.6e", probe.residual) << '\n';
    }
    out << "# max_residual = " << fmt("%.6e", report.max_residual) << '\n';
    return out.str();
}

ConvergenceReport parse_report_csv(const std::string& text) {
    ConvergenceReport report;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::array<std::string, 4> cell;
        size_t field = 0, start = 0;
        for (size_t pos = 0; pos <= line.size() && field < 4; ++pos) {
            if (pos == line.size() || line[pos] == ',') {
                cell[field++] = line.substr(start, pos - start);
                start = pos + 1;
            }
        }
        ReportRow row;
        row.dt = std::stod(cell[0]);
        if (!cell[1].empty()) row.dx = std::stod(cell[1]);
        row.mae = std::stod(cell[2]);
        if (!cell[3].empty()) row.co = std::stod(cell[3]);
        report.rows.push_back(row);
    }
    return report;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::List: {
                for (CaseId id : all_cases()) {
                    out << to_string(id) << "  " << case_summary(id) << '\n';
                }
                return kExitOk;
            }
            case Command::Operator: {
                if (!is_operator_case(config.case_id)) {
                    throw DomainError("operator command needs an op case (op1, op2)");
                }
                const auto oc = get_operator_case(
                    config.case_id,
                    config.alpha >= 0.0 ? std::optional<double>(config.alpha) : std::nullopt);
                const auto report = run_operator_study(oc, config.levels);
                write_artifact(render_report(report, config.format), config.out_path, out);
                return kExitOk;
            }
            case Command::Study: {
                const auto cc = get_case(config.case_id, config.resolved_alpha(),
                                         config.ex4_printed_forcing);
                GfdeProblem problem = cc.problem;
                problem.delta = config.delta;
                StudySchedule schedule;
                schedule.mode = config.refine;
                schedule.base_M = config.nt;
                schedule.base_N = config.nx;
                schedule.levels = config.levels;
                schedule.scope = config.scope;
                schedule.collect_diagnostics = config.diagnostics;
                const auto report =
                    run_refinement_study(problem, schedule, to_string(config.case_id));
                write_artifact(render_report(report, config.format), config.out_path, out);
                if (report.worst_amplification) {
                    err << "# stability: worst amplification " << *report.worst_amplification
                        << ", min gap " << *report.min_gap << ", bound "
                        << (report.stability_within_bound ? "holds" : "violated") << '\n';
                }
                if (!report.abort_error.empty()) {
                    err << "study aborted after " << report.rows.size()
                        << " level(s): " << report.abort_error << '\n';
                    return kExitNumerical;
                }
                return kExitOk;
            }
            case Command::Solve: {
                const auto cc = get_case(config.case_id, config.resolved_alpha(),
                                         config.ex4_printed_forcing);
                GfdeProblem problem = cc.problem;
                problem.delta = config.delta;
                const auto run = march(problem, config.nt, config.nx, config.diagnostics);
                write_artifact(render_field_csv(run.field, problem.exact), config.out_path, out);
                if (run.stability) {
                    const std::string diag = render_stability_csv(*run.stability);
                    if (config.out_path.empty()) {
                        out << "# stability diagnostics\n" << diag;
                    } else {
                        write_artifact(diag, config.out_path + ".diag.csv", out);
                    }
                }
                return kExitOk;
            }
            case Command::Verify: {
                const auto cc = get_case(config.case_id, config.resolved_alpha(),
                                         config.ex4_printed_forcing);
                const double quad_tol = std::max(1e-12, config.verify_tol / 100.0);
                const auto report = verify_case_consistency(cc, quad_tol);
                write_artifact(render_consistency_csv(report), config.out_path, out);
                if (report.max_residual > config.verify_tol) {
                    err << "consistency check failed: max residual " << report.max_residual
                        << " exceeds tol " << config.verify_tol << '\n';
                    return kExitConsistency;
                }
                return kExitOk;
            }
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}

int run_main(int argc, const char* const* argv) {
    try {
        const auto outcome = parse_internal(argc, argv);
        if (outcome.help) {
            std::cout << outcome.help_text;
            return kExitOk;
        }
        return execute(outcome.config, std::cout, std::cerr);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace gfde::cli
