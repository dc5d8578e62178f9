#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "gfde/cli.hpp"

using namespace gfde;
using namespace gfde::cli;

namespace {

RunConfig parse(std::vector<const char*> args) {
    args.insert(args.begin(), "gfde");
    return parse_config(static_cast<int>(args.size()), args.data());
}

std::string write_temp_json(const std::string& body) {
    static int counter = 0;
    const auto path = std::filesystem::temp_directory_path() /
                      ("gfde_cli_test_" + std::to_string(counter++) + ".json");
    std::ofstream out(path);
    out << body;
    return path.string();
}

}  // namespace

TEST_CASE("parse_config maps flags directly") {
    const auto cfg = parse({"solve", "--case", "ex1", "--alpha", "0.85", "--nt", "8",
                            "--nx", "8"});
    CHECK(cfg.command == Command::Solve);
    CHECK(cfg.case_id == CaseId::Ex1);
    CHECK(cfg.alpha == 0.85);
    CHECK(cfg.nt == 8);
    CHECK(cfg.nx == 8);
    CHECK(cfg.format == OutputFormat::Csv);
    CHECK(cfg.resolved_alpha() == 0.85);
}

TEST_CASE("parse_config rejects alpha outside (0,1)") {
    CHECK_THROWS_WITH_AS(parse({"solve", "--case", "ex1", "--alpha", "1.5"}),
                         "alpha must lie in (0,1)", DomainError);
    CHECK_THROWS_AS(parse({"solve", "--case", "ex1", "--alpha", "0"}), DomainError);
}

TEST_CASE("parse_config rejects unknown cases and missing case") {
    CHECK_THROWS_AS(parse({"solve", "--case", "ex9"}), DomainError);
    CHECK_THROWS_AS(parse({"study"}), DomainError);
}

TEST_CASE("parse_config validates sizes and levels") {
    CHECK_THROWS_AS(parse({"solve", "--case", "ex1", "--nt", "0"}), DomainError);
    CHECK_THROWS_AS(parse({"solve", "--case", "ex1", "--nx", "1"}), DomainError);
    CHECK_THROWS_AS(parse({"study", "--case", "ex1", "--levels", "1"}), DomainError);
    CHECK_THROWS_AS(parse({"study", "--case", "ex1", "--delta", "-1"}), DomainError);
}

TEST_CASE("fixed-nt and fixed-nx are aliases and refine modes parse") {
    const auto cfg = parse({"study", "--case", "ex3", "--refine", "space", "--fixed-nt",
                            "600", "--nx", "10", "--levels", "6", "--error-scope", "final"});
    CHECK(cfg.refine == RefineMode::SpaceOnly);
    CHECK(cfg.nt == 600);
    CHECK(cfg.nx == 10);
    CHECK(cfg.scope == ErrorScope::FinalTime);
    CHECK_THROWS_AS(parse({"study", "--case", "ex1", "--refine", "sideways"}), DomainError);
}

TEST_CASE("config file supplies defaults and flags override") {
    const auto path = write_temp_json(R"({"nt": 16, "alpha": 0.85, "case": "ex1"})");
    const auto cfg = parse({"study", "--config", path.c_str(), "--nt", "32"});
    CHECK(cfg.nt == 32);      // flag wins
    CHECK(cfg.alpha == 0.85); // file value survives
    CHECK(cfg.case_id == CaseId::Ex1);
    std::filesystem::remove(path);
}

TEST_CASE("config file errors name the offending key") {
    const auto bad_key = write_temp_json(R"({"step-count": 4})");
    CHECK_THROWS_WITH_AS(parse({"study", "--case", "ex1", "--config", bad_key.c_str()}),
                         "unknown config key 'step-count'", DomainError);
    std::filesystem::remove(bad_key);

    const auto bad_value = write_temp_json(R"({"nt": "lots"})");
    CHECK_THROWS_AS(parse({"study", "--case", "ex1", "--config", bad_value.c_str()}),
                    DomainError);
    std::filesystem::remove(bad_value);

    const auto malformed = write_temp_json("{nt: ");
    CHECK_THROWS_AS(parse({"study", "--case", "ex1", "--config", malformed.c_str()}),
                    DomainError);
    std::filesystem::remove(malformed);
}

TEST_CASE("render_report csv shape") {
    ConvergenceReport report;
    report.rows.push_back({0.1, 0.1, 7.0493e-4, std::nullopt});
    const std::string one = render_report(report, OutputFormat::Csv);
    CHECK(one == "dt,dx,mae,co\n0.1,0.1,7.049300000e-04,\n");

    for (int lev = 1; lev < 5; ++lev) {
        ReportRow row;
        row.dt = report.rows.back().dt / 2.0;
        row.dx = *report.rows.back().dx / 2.0;
        row.mae = report.rows.back().mae / 4.0;
        row.co = 2.0;
        report.rows.push_back(row);
    }
    const std::string five = render_report(report, OutputFormat::Csv);
    int lines = 0, cos = 0;
    std::istringstream in(five);
    std::string line;
    std::getline(in, line);
    CHECK(line == "dt,dx,mae,co");
    while (std::getline(in, line)) {
        ++lines;
        if (line.back() != ',') ++cos;
    }
    CHECK(lines == 5);
    CHECK(cos == 4);
}

TEST_CASE("render_report markdown keeps the column order") {
    ConvergenceReport report;
    report.rows.push_back({0.1, 0.05, 1.5e-3, std::nullopt});
    report.rows.push_back({0.05, 0.025, 3.7e-4, 2.0195});
    const std::string md = render_report(report, OutputFormat::Md);
    std::istringstream in(md);
    std::string line;
    std::getline(in, line);
    CHECK(line == "| dt | dx | mae | co |");
    std::getline(in, line);
    CHECK(line.find("---") != std::string::npos);
    std::getline(in, line);
    CHECK(line.find("| 0.1 | 0.05 |") == 0);
}

TEST_CASE("csv reports round-trip and the co column recomputes from mae") {
    ConvergenceReport report;
    double dt = 0.1, mae = 6.84003e-3;
    for (int lev = 0; lev < 5; ++lev) {
        ReportRow row;
        row.dt = dt;
        row.mae = mae;
        if (lev > 0) row.co = std::log2(report.rows.back().mae / mae);
        report.rows.push_back(row);
        dt /= 2.0;
        mae /= 6.56;
    }
    const auto parsed = parse_report_csv(render_report(report, OutputFormat::Csv));
    REQUIRE(parsed.rows.size() == report.rows.size());
    for (size_t r = 0; r < parsed.rows.size(); ++r) {
        CHECK(parsed.rows[r].dt == doctest::Approx(report.rows[r].dt).epsilon(1e-9));
        CHECK(parsed.rows[r].mae == doctest::Approx(report.rows[r].mae).epsilon(1e-9));
        CHECK(parsed.rows[r].dx.has_value() == report.rows[r].dx.has_value());
        if (r > 0) {
            REQUIRE(parsed.rows[r].co.has_value());
            const double recomputed = std::log2(parsed.rows[r - 1].mae / parsed.rows[r].mae);
            CHECK(*parsed.rows[r].co == doctest::Approx(recomputed).epsilon(1e-3));
        }
    }
}

TEST_CASE("execute list names every case") {
    RunConfig cfg;
    cfg.command = Command::List;
    std::ostringstream out, err;
    CHECK(execute(cfg, out, err) == kExitOk);
    for (CaseId id : all_cases()) {
        CHECK(out.str().find(to_string(id)) != std::string::npos);
    }
}

TEST_CASE("execute solve emits a parseable deterministic field dump") {
    const auto cfg = parse({"solve", "--case", "ex2", "--alpha", "0.5", "--nt", "4",
                            "--nx", "4"});
    std::ostringstream out1, out2, err;
    CHECK(execute(cfg, out1, err) == kExitOk);
    CHECK(execute(cfg, out2, err) == kExitOk);
    CHECK(out1.str() == out2.str());

    std::istringstream in(out1.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,t,u_num,u_exact,abs_err");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 25);
}

TEST_CASE("execute study produces a csv report at matching size") {
    const auto cfg = parse({"study", "--case", "ex2", "--alpha", "0.5", "--nt", "4",
                            "--nx", "4", "--levels", "3"});
    std::ostringstream out, err;
    REQUIRE(execute(cfg, out, err) == kExitOk);
    const auto report = parse_report_csv(out.str());
    CHECK(report.rows.size() == 3);
}

TEST_CASE("execute operator runs a short study") {
    const auto cfg = parse({"operator", "--case", "op1", "--levels", "2"});
    std::ostringstream out, err;
    REQUIRE(execute(cfg, out, err) == kExitOk);
    const auto report = parse_report_csv(out.str());
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].mae == doctest::Approx(6.84003e-3).epsilon(0.01));

    // the case/command kind mismatch is an execute-time config error
    const auto mismatched = parse({"operator", "--case", "ex1"});
    std::ostringstream out2, err2;
    CHECK(execute(mismatched, out2, err2) == kExitConfig);
}

TEST_CASE("execute verify splits consistent and inconsistent forcings by exit code") {
    std::ostringstream out, err;
    const auto ok_cfg = parse({"verify", "--case", "ex2", "--alpha", "0.5"});
    CHECK(execute(ok_cfg, out, err) == kExitOk);

    const auto bad_cfg = parse({"verify", "--case", "ex4", "--alpha", "0.4",
                                "--ex4-printed-forcing"});
    std::ostringstream out2, err2;
    CHECK(execute(bad_cfg, out2, err2) == kExitConsistency);
    CHECK(err2.str().find("residual") != std::string::npos);
}

TEST_CASE("execute maps domain errors to the config exit code") {
    RunConfig cfg;
    cfg.command = Command::Operator;
    cfg.case_id = CaseId::Ex1;  // wrong kind for the command
    cfg.has_case = true;
    std::ostringstream out, err;
    CHECK(execute(cfg, out, err) == kExitConfig);
}

TEST_CASE("run_main writes artifacts to --out") {
    const auto path = (std::filesystem::temp_directory_path() / "gfde_cli_out.csv").string();
    std::vector<const char*> args = {"gfde", "study", "--case", "ex2", "--alpha", "0.5",
                                     "--nt", "4", "--nx", "4", "--levels", "2",
                                     "--out", path.c_str()};
    CHECK(run_main(static_cast<int>(args.size()), args.data()) == kExitOk);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(parse_report_csv(buffer.str()).rows.size() == 2);
    std::filesystem::remove(path);
}
