#include "cli.hpp"

#include "imhit/bench.hpp"
#include "imhit/model_json.hpp"
#include "imhit/reachability.hpp"
#include "imhit/report_json.hpp"
#include "imhit/solvers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>

namespace imhit::cli {

namespace {

using nlohmann::json;

struct SolveFlags {
    std::string model;
    std::string bound = "lower";
    std::string method = "policy";
    double tol = 1e-9;
    std::string init = "greedy";
    std::uint64_t seed = 0;
    bool trace = false;
    unsigned max_iter = 0;
    bool omit_wall_time = false;
};

struct BenchFlags {
    std::vector<std::size_t> sizes;
    std::size_t vertices = 50;
    unsigned trials = 50;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::string init = "greedy";
    std::string out;
    std::string histogram;
    unsigned jobs = 0;
    bool omit_wall_time = false;
};

int domain_failure(std::ostream& out, std::ostream& err, const std::string& kind, const std::string& message,
                   json extra = json::object()) {
    extra["error"] = kind;
    extra["message"] = message;
    out << extra.dump(2) << '\n';
    err << "error: " << kind << ": " << message << '\n';
    return kExitDomainError;
}

InitRule parse_init(const std::string& name, std::uint64_t seed) {
    if (name == "first") return InitRule::first();
    if (name == "random") return InitRule::random(seed);
    return InitRule::greedy();
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    const ModelData data = load_model_file(path);
    const ValidationReport report = validate(data);
    out << validation_to_json(report).dump(2) << '\n';
    if (!report.accepted()) {
        err << "error: model rejected (" << report.issues.size() << " issue(s))\n";
        return kExitDomainError;
    }
    return kExitOk;
}

int cmd_reach(const std::string& path, std::ostream& out, std::ostream& err) {
    const Model model = Model::create(load_model_file(path));
    const ReachabilityReport report = check_reachability(model);
    out << reachability_to_json(report, model.labels()).dump(2) << '\n';
    if (!report.holds) {
        err << "error: reachability fails for " << report.violating.size() << " state(s)\n";
        return kExitDomainError;
    }
    return kExitOk;
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
    const Model model = Model::create(load_model_file(f.model));
    const Bound bound = f.bound == "upper" ? Bound::Upper : Bound::Lower;
    SolveReport report;
    if (f.method == "policy") {
        PolicyIterationOptions o;
        o.bound = bound;
        o.init = parse_init(f.init, f.seed);
        o.tol = f.tol;
        o.max_iterations = f.max_iter;
        o.trace = f.trace;
        report = solve_policy(model, o);
    } else if (f.method == "value") {
        ValueIterationOptions o;
        o.bound = bound;
        o.tol = f.tol;
        if (f.max_iter > 0) o.max_iterations = f.max_iter;
        o.trace = f.trace;
        report = solve_value(model, o);
    } else {
        BruteForceOptions o;
        o.bound = bound;
        report = solve_brute(model, o);
    }
    (void)err;
    out << solve_report_to_json(report, model.labels(), !f.omit_wall_time).dump(2) << '\n';
    return kExitOk;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
    bench::BenchConfig config;
    config.sizes = f.sizes;
    config.vertices_per_row = f.vertices;
    config.trials = f.trials;
    config.seed = f.seed;
    config.tol = f.tol;
    config.init = parse_init(f.init, f.seed);
    config.jobs = f.jobs;
    try {
        bench::check_config(config);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const auto records = bench::run_experiment(config);
    std::ofstream csv(f.out);
    if (!csv) {
        err << "error: cannot write '" << f.out << "'\n";
        return kExitUsage;
    }
    bench::write_csv(csv, records, !f.omit_wall_time);

    const json histogram = bench::iteration_histogram(records);
    if (!f.histogram.empty()) {
        std::ofstream h(f.histogram);
        if (!h) {
            err << "error: cannot write '" << f.histogram << "'\n";
            return kExitUsage;
        }
        h << histogram.dump(2) << '\n';
    }
    const auto failed = std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.error.empty(); });
    out << json{{"records", records.size()}, {"failed", failed}, {"histogram", histogram}, {"csv", f.out}}.dump(2)
        << '\n';
    if (failed > 0) {
        err << "error: " << failed << " trial(s) failed\n";
        return kExitDomainError;
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lower and upper expected hitting times for imprecise Markov chains", "imhit"};
    app.require_subcommand(1);

    std::string validate_model;
    auto* validate_cmd = app.add_subcommand("validate", "Check a model file and print per-row diagnostics");
    validate_cmd->add_option("--model", validate_model, "Model JSON file")->required()->check(CLI::ExistingFile);

    std::string reach_model;
    auto* reach_cmd = app.add_subcommand("reach", "Check that the target is reachable from every state");
    reach_cmd->add_option("--model", reach_model, "Model JSON file")->required()->check(CLI::ExistingFile);

    SolveFlags sf;
    auto* solve_cmd = app.add_subcommand("solve", "Compute lower or upper expected hitting times");
    solve_cmd->add_option("--model", sf.model, "Model JSON file")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--bound", sf.bound, "lower|upper")->check(CLI::IsMember({"lower", "upper"}));
    solve_cmd->add_option("--method", sf.method, "policy|value|brute")
        ->check(CLI::IsMember({"policy", "value", "brute"}));
    solve_cmd->add_option("--tol", sf.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--init", sf.init, "greedy|first|random")
        ->check(CLI::IsMember({"greedy", "first", "random"}));
    solve_cmd->add_option("--seed", sf.seed, "Seed for --init random");
    solve_cmd->add_option("--max-iter", sf.max_iter, "Iteration cap (0: method default)");
    solve_cmd->add_flag("--trace", sf.trace, "Include the per-iteration trace");
    solve_cmd->add_flag("--omit-wall-time", sf.omit_wall_time, "Leave wall_time_s out of the report");

    BenchFlags bf;
    auto* bench_cmd = app.add_subcommand("bench", "Run the random-model iteration-count experiment");
    bench_cmd->add_option("--sizes", bf.sizes, "State-space sizes (comma separated)")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--vertices", bf.vertices, "Vertices per row");
    bench_cmd->add_option("--trials", bf.trials, "Trials per size");
    bench_cmd->add_option("--seed", bf.seed, "Master seed");
    bench_cmd->add_option("--tol", bf.tol, "Policy-iteration tolerance")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--init", bf.init, "greedy|first|random")
        ->check(CLI::IsMember({"greedy", "first", "random"}));
    bench_cmd->add_option("--out", bf.out, "CSV output path")->required();
    bench_cmd->add_option("--histogram", bf.histogram, "Optional JSON histogram output path");
    bench_cmd->add_option("--jobs", bf.jobs, "Worker threads (0: machine parallelism)");
    bench_cmd->add_flag("--omit-wall-time", bf.omit_wall_time, "Leave the wall_time_s column empty");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(validate_model, out, err);
        if (*reach_cmd) return cmd_reach(reach_model, out, err);
        if (*solve_cmd) return cmd_solve(sf, out, err);
        if (*bench_cmd) return cmd_bench(bf, out, err);
    } catch (const FileError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        return domain_failure(out, err, "InvalidModel", e.what(), {{"validation", validation_to_json(e.report())}});
    } catch (const MaxIterationsExceeded& e) {
        json trace = json::array();
        for (const auto& t : e.trace()) {
            trace.push_back({{"iteration", t.iteration}, {"sup_norm", t.sup_norm}, {"policy_changes", t.policy_changes}});
        }
        return domain_failure(out, err, std::string(to_string(e.kind())), e.what(), {{"trace", std::move(trace)}});
    } catch (const Error& e) {
        return domain_failure(out, err, std::string(to_string(e.kind())), e.what());
    }
    return kExitUsage;
}

} // namespace imhit::cli
