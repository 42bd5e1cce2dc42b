#include "imhit/solvers.hpp"
#include "imhit/linsolve.hpp"
#include "imhit/lp.hpp"
#include "imhit/reachability.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace imhit {

std::string_view to_string(Method method) {
    switch (method) {
    case Method::Policy: return "policy";
    case Method::Value: return "value";
    case Method::Brute: return "brute";
    }
    return "unknown";
}

std::string_view to_string(InitRule::Kind kind) {
    switch (kind) {
    case InitRule::Kind::GreedyUpperAbsorption: return "greedy";
    case InitRule::Kind::FirstVertex: return "first";
    case InitRule::Kind::Random: return "random";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<bool> target_mask(const Model& model) {
    std::vector<bool> mask(model.size());
    for (std::size_t x = 0; x < model.size(); ++x) mask[x] = model.in_target(x);
    return mask;
}

void require_reachability(const Model& model) {
    const ReachabilityReport reach = check_reachability(model);
    if (reach.holds) return;
    std::ostringstream msg;
    msg << "target is not reachable with positive lower probability from:";
    for (std::size_t x : reach.violating) msg << ' ' << model.labels()[x];
    throw Error(ErrorKind::ReachabilityViolation, msg.str());
}

TraceEntry make_entry(unsigned iteration, const Vector& h, std::size_t changes) {
    return {iteration, sup_norm(h), changes, h};
}

} // namespace

Policy initial_policy(const Model& model, const InitRule& rule) {
    switch (rule.kind) {
    case InitRule::Kind::GreedyUpperAbsorption:
        return upper_apply(model, model.target_indicator()).policy;

    case InitRule::Kind::FirstVertex: {
        Policy policy;
        const Vector zero(model.size(), 0.0);
        for (std::size_t x = 0; x < model.size(); ++x) {
            if (std::holds_alternative<VertexRow>(model.row(x))) {
                policy.selectors.emplace_back(VertexIndex{0});
            } else {
                // First basic feasible solution found by phase one.
                policy.selectors.push_back(lp::minimize_row(std::get<ConstraintRow>(model.row(x)), zero).basis);
            }
        }
        return policy;
    }

    case InitRule::Kind::Random: {
        std::mt19937_64 rng(rule.seed);
        Policy policy;
        for (std::size_t x = 0; x < model.size(); ++x) {
            if (const auto* v = std::get_if<VertexRow>(&model.row(x))) {
                policy.selectors.emplace_back(VertexIndex{static_cast<std::size_t>(rng() % v->vertices.size())});
            } else {
                // No vertex list to draw from; minimise a random direction.
                Vector direction(model.size());
                for (double& d : direction) d = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
                policy.selectors.push_back(
                    lp::minimize_row(std::get<ConstraintRow>(model.row(x)), direction).basis);
            }
        }
        return policy;
    }
    }
    return {};
}

Vector solve_for_policy(const Model& model, const Policy& policy) {
    return solve_precise(policy_to_matrix(model, policy), target_mask(model));
}

double fixed_point_residual(const Model& model, std::span<const double> h, Bound bound) {
    const Vector th = apply(model, h, bound).value;
    double worst = 0.0;
    for (std::size_t x = 0; x < model.size(); ++x) {
        const double rhs = model.in_target(x) ? 0.0 : 1.0 + th[x];
        worst = std::max(worst, std::abs(h[x] - rhs));
    }
    return worst;
}

SolveReport solve_policy(const Model& model, const PolicyIterationOptions& options) {
    const auto start = Clock::now();
    if (!options.assume_reachable) require_reachability(model);
    const unsigned cap =
        options.max_iterations > 0 ? options.max_iterations : static_cast<unsigned>(10 * model.size());

    SolveReport report;
    report.bound = options.bound;
    report.method = Method::Policy;

    Policy policy = initial_policy(model, options.init);
    Vector h = solve_for_policy(model, policy);
    unsigned n = 1;
    report.linear_solves = 1;
    // Always kept so a capped run can report it; returned only on request.
    std::vector<TraceEntry> trace;
    trace.push_back(make_entry(n, h, 0));

    for (;;) {
        Policy next = apply(model, h, options.bound).policy;
        const std::size_t changes = count_changes(policy, next);
        if (changes == 0) {
            // Same extreme point, so h_{n+1} = h_n without another solve.
            ++n;
            trace.push_back(make_entry(n, h, 0));
            break;
        }
        if (n >= cap) {
            throw MaxIterationsExceeded("policy iteration did not settle within " + std::to_string(cap) +
                                            " iterations",
                                        std::move(trace));
        }
        Vector h_next = solve_for_policy(model, next);
        ++report.linear_solves;
        ++n;
        trace.push_back(make_entry(n, h_next, changes));
        const bool settled = sup_distance(h_next, h) <= options.tol * (1.0 + sup_norm(h_next));
        h = std::move(h_next);
        policy = std::move(next);
        if (settled) break;
    }

    report.iterations = n;
    report.solution = std::move(h);
    report.residual = fixed_point_residual(model, report.solution, options.bound);
    report.policy = std::move(policy);
    if (options.trace) report.trace = std::move(trace);
    report.wall_time = seconds_since(start);
    return report;
}

SolveReport solve_value(const Model& model, const ValueIterationOptions& options) {
    const auto start = Clock::now();
    if (!options.assume_reachable) require_reachability(model);

    SolveReport report;
    report.bound = options.bound;
    report.method = Method::Value;
    report.tolerance_limited = true;

    Vector h = model.complement_indicator();
    // Without a requested trace only the norms are kept, for the cap error.
    std::vector<TraceEntry> trace;
    const auto record = [&](unsigned iteration) {
        trace.push_back(options.trace ? make_entry(iteration, h, 0) : TraceEntry{iteration, sup_norm(h), 0, {}});
    };
    record(0);

    unsigned n = 0;
    for (;;) {
        if (n >= options.max_iterations) {
            throw MaxIterationsExceeded("value iteration did not reach tolerance within " +
                                            std::to_string(options.max_iterations) + " iterations",
                                        std::move(trace));
        }
        const Vector th = apply(model, h, options.bound).value;
        Vector next(model.size());
        for (std::size_t x = 0; x < model.size(); ++x) next[x] = model.in_target(x) ? 0.0 : 1.0 + th[x];
        ++n;
        const double step = sup_distance(next, h);
        h = std::move(next);
        record(n);
        if (step <= options.tol) break;
    }

    report.iterations = n;
    report.solution = std::move(h);
    report.residual = fixed_point_residual(model, report.solution, options.bound);
    if (options.trace) report.trace = std::move(trace);
    report.wall_time = seconds_since(start);
    return report;
}

SolveReport solve_brute(const Model& model, const BruteForceOptions& options) {
    const auto start = Clock::now();
    if (!model.all_vertex_rows()) {
        throw Error(ErrorKind::Unsupported, "brute force needs every row in vertex form");
    }

    const std::size_t n = model.size();
    std::vector<std::size_t> counts(n);
    std::uint64_t combinations = 1;
    for (std::size_t x = 0; x < n; ++x) {
        counts[x] = std::get<VertexRow>(model.row(x)).vertices.size();
        if (combinations > options.max_combinations / counts[x]) {
            throw Error(ErrorKind::TooManyCombinations,
                        "more than " + std::to_string(options.max_combinations) + " vertex combinations");
        }
        combinations *= counts[x];
    }
    require_reachability(model);

    const std::vector<bool> mask = target_mask(model);
    const bool lower = options.bound == Bound::Lower;
    const double worst = lower ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();

    Vector extremum(n, worst);
    double best_total = worst;
    Policy best_policy;
    std::vector<std::size_t> choice(n, 0);
    Matrix matrix(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        const Vector& v = std::get<VertexRow>(model.row(x)).vertices[0];
        std::copy(v.begin(), v.end(), matrix.row(x).begin());
    }

    SolveReport report;
    report.bound = options.bound;
    report.method = Method::Brute;
    for (std::uint64_t c = 0; c < combinations; ++c) {
        const Vector h = solve_precise(matrix, mask);
        ++report.linear_solves;
        double total = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            extremum[x] = lower ? std::min(extremum[x], h[x]) : std::max(extremum[x], h[x]);
            total += h[x];
        }
        // The attaining combination is extremal in every coordinate, hence
        // also in the sum.
        if (lower ? total < best_total : total > best_total) {
            best_total = total;
            best_policy.selectors.clear();
            for (std::size_t x = 0; x < n; ++x) best_policy.selectors.emplace_back(VertexIndex{choice[x]});
        }

        // Odometer step over the vertex choices.
        for (std::size_t x = 0; x < n; ++x) {
            choice[x] = (choice[x] + 1) % counts[x];
            const Vector& v = std::get<VertexRow>(model.row(x)).vertices[choice[x]];
            std::copy(v.begin(), v.end(), matrix.row(x).begin());
            if (choice[x] != 0) break;
        }
    }

    report.iterations = static_cast<unsigned>(combinations);
    report.solution = std::move(extremum);
    report.residual = fixed_point_residual(model, report.solution, options.bound);
    report.policy = std::move(best_policy);
    report.wall_time = seconds_since(start);
    return report;
}

} // namespace imhit
