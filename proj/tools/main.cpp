#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "taskmech/config.hpp"
#include "taskmech/io.hpp"
#include "taskmech/solver.hpp"
#include "taskmech/verifier.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace taskmech;

namespace {

#ifndef TASKMECH_VERSION
#define TASKMECH_VERSION "0.0.0"
#endif

// exit codes: 0 success, 1 input/validation error, 2 non-convergence,
// 3 verification failure
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotConverged = 2;
constexpr int kVerifyFailed = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "./out";
    bool quiet = false;
    bool seedless = false;
};

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

json verification_to_json(const VerificationReport& r) {
    return json{{"ir_min_diag", r.ir_min_diag},
                {"ir_binding_residual", r.ir_binding_residual},
                {"ic_max_deviation_steps", r.ic_max_deviation_steps},
                {"ic_worst_gain", r.ic_worst_gain},
                {"alpha_monotone", r.alpha_monotone},
                {"envelope_max_residual", r.envelope_max_residual},
                {"profit_residual", r.profit_residual},
                {"profit_direct", r.profit_direct},
                {"profit_virtual", r.profit_virtual},
                {"passed", r.passed}};
}

json manifest_base(const std::string& command, const std::string& config_path) {
    json m;
    m["tool"] = {{"name", "taskmech"}, {"version", TASKMECH_VERSION}};
    m["command"] = command;
    m["timestamp"] = timestamp_utc();
    std::ifstream in(config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    m["config"] = json::parse(buf.str());
    return m;
}

// Files keyed by name, produced fully in memory so a --seedless rerun can be
// compared byte for byte before anything lands on disk.
using FileSet = std::map<std::string, std::string>;

void flush_files(const FileSet& files, const fs::path& dir) {
    fs::create_directories(dir);
    for (const auto& [name, content] : files) write_file(dir / name, content);
}

struct SolveOutputs {
    FileSet files;
    bool converged = false;
};

SolveOutputs run_solve_pipeline(const ProblemConfig& cfg, const std::string& config_path,
                                const std::string& command, bool quiet) {
    const TypeDistribution dist = cfg.make_distribution();
    const Models models = cfg.make_models();

    SolveOutputs out;
    SolveResult result;
    std::vector<Alpha0Evaluation> evaluations;

    if (cfg.alpha0_search) {
        Alpha0Result search = optimize_alpha0(cfg.solver, models, dist,
                                              cfg.search_interval[0], cfg.search_interval[1]);
        if (!quiet)
            std::cout << "alpha0 search: best " << search.alpha0 << " with profit "
                      << search.profit << " (" << search.evaluations.size()
                      << " evaluations)\n";
        evaluations = std::move(search.evaluations);
        result = std::move(search.best);
    } else {
        result = solve(cfg.solver, models, dist);
    }

    const VerificationReport report = verify(result.schedule, models, dist, cfg.verify);

    out.converged = result.converged;
    out.files["schedule.csv"] = schedule_to_csv(result.schedule);
    out.files["trace.csv"] = trace_to_csv(result.trace);
    out.files["snapshots.csv"] = snapshots_to_csv(result.trace, result.schedule.grid);
    if (command == "sweep-alpha0") out.files["sweep.csv"] = sweep_to_csv(evaluations);

    json manifest = manifest_base(command, config_path);
    manifest["convergence"] = {{"converged", result.converged},
                               {"iterations", result.trace.iterations}};
    manifest["profit"] = {{"direct", result.profit.direct},
                          {"virtual", result.profit.virtual_},
                          {"residual", result.profit.residual}};
    manifest["verification"] = verification_to_json(report);
    out.files["manifest.json"] = manifest.dump(2) + "\n";

    if (!quiet) {
        std::cout << (result.converged ? "converged" : "iteration budget exhausted")
                  << " after " << result.trace.iterations << " iterations; profit "
                  << result.profit.direct << "\n";
    }
    return out;
}

int with_seedless_check(const CommonOpts& opts,
                        const std::function<SolveOutputs()>& pipeline, int& exit_code) {
    SolveOutputs first = pipeline();
    if (opts.seedless) {
        SolveOutputs second = pipeline();
        if (first.files != second.files) {
            std::cerr << "seedless self-check failed: rerun produced different bytes\n";
            exit_code = kInputError;
            return kInputError;
        }
        if (!opts.quiet) std::cout << "seedless self-check passed: reruns are byte-identical\n";
    }
    flush_files(first.files, opts.out_dir);
    exit_code = first.converged ? kOk : kNotConverged;
    return exit_code;
}

int cmd_solve(const CommonOpts& opts) {
    const ProblemConfig cfg = load_problem_config(opts.config_path);
    int code = kOk;
    with_seedless_check(
        opts, [&] { return run_solve_pipeline(cfg, opts.config_path, "solve", opts.quiet); },
        code);
    return code;
}

int cmd_sweep_alpha0(const CommonOpts& opts) {
    const ProblemConfig cfg = load_problem_config(opts.config_path);
    if (!cfg.alpha0_search) {
        std::cerr << "sweep-alpha0 requires solver.alpha0 set to \"search\" in the config\n";
        return kInputError;
    }
    int code = kOk;
    with_seedless_check(
        opts,
        [&] { return run_solve_pipeline(cfg, opts.config_path, "sweep-alpha0", opts.quiet); },
        code);
    return code;
}

int cmd_verify(const CommonOpts& opts, const std::string& schedule_path) {
    const ProblemConfig cfg = load_problem_config(opts.config_path);
    const TypeDistribution dist = cfg.make_distribution();
    const Models models = cfg.make_models();
    const RewardSchedule schedule = read_schedule_csv(schedule_path);

    const VerificationReport report = verify(schedule, models, dist, cfg.verify);
    const UtilityMatrix matrix = utility_matrix(schedule, models.pi, models.market.p);

    FileSet files;
    files["verification.json"] = verification_to_json(report).dump(2) + "\n";
    files["utility_matrix.csv"] = utility_matrix_to_csv(matrix, schedule.grid);
    json manifest = manifest_base("verify", opts.config_path);
    manifest["convergence"] = nullptr;
    manifest["profit"] = {{"direct", report.profit_direct},
                          {"virtual", report.profit_virtual},
                          {"residual", report.profit_residual}};
    manifest["verification"] = verification_to_json(report);
    files["manifest.json"] = manifest.dump(2) + "\n";
    flush_files(files, opts.out_dir);

    if (!opts.quiet) {
        std::cout << "verification " << (report.passed ? "passed" : "FAILED")
                  << ": ir_min=" << report.ir_min_diag
                  << " ic_steps=" << report.ic_max_deviation_steps
                  << " alpha_monotone=" << (report.alpha_monotone ? "yes" : "no")
                  << " envelope=" << report.envelope_max_residual
                  << " profit_residual=" << report.profit_residual << "\n";
    }
    return report.passed ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truthful reward-schedule solver and verifier"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string schedule_path;

    auto add_common = [&](CLI::App* sub, bool with_schedule) {
        sub->add_option("config", opts.config_path, "problem config (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        if (with_schedule)
            sub->add_option("schedule", schedule_path, "schedule.csv to verify")
                ->required()
                ->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out_dir, "output directory")
            ->capture_default_str();
        sub->add_flag("--quiet", opts.quiet, "suppress progress output");
        sub->add_flag("--seedless", opts.seedless,
                      "run the pipeline twice and require byte-identical outputs");
    };

    auto* solve_cmd = app.add_subcommand("solve", "solve for the optimal reward schedule");
    add_common(solve_cmd, false);
    auto* verify_cmd =
        app.add_subcommand("verify", "certify IR/IC and structural properties of a schedule");
    add_common(verify_cmd, true);
    auto* sweep_cmd =
        app.add_subcommand("sweep-alpha0", "outer search over the free initial slope");
    add_common(sweep_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return cmd_solve(opts);
        if (verify_cmd->parsed()) return cmd_verify(opts, schedule_path);
        if (sweep_cmd->parsed()) return cmd_sweep_alpha0(opts);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const CsvError& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
