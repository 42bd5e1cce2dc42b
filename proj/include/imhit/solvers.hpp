#pragma once

#include "imhit/model.hpp"
#include "imhit/operator.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace imhit {

enum class Method { Policy, Value, Brute };
std::string_view to_string(Method method);

/// How policy iteration picks its first extreme point.
struct InitRule {
    enum class Kind {
        GreedyUpperAbsorption,  // attains upper(1_A) row-wise
        FirstVertex,            // vertex 0 of V-rep rows, min of p(first state) for H-rep rows
        Random,                 // seeded uniform vertex per V-rep row
    };
    Kind kind = Kind::GreedyUpperAbsorption;
    std::uint64_t seed = 0;

    static InitRule greedy() { return {}; }
    static InitRule first() { return {Kind::FirstVertex, 0}; }
    static InitRule random(std::uint64_t seed) { return {Kind::Random, seed}; }
};
std::string_view to_string(InitRule::Kind kind);

struct TraceEntry {
    unsigned iteration = 0;
    double sup_norm = 0.0;        // ||h_n||_inf
    std::size_t policy_changes = 0;  // selectors that differ from the previous policy
    Vector solution;              // h_n (policy iteration) or the iterate (value iteration)
};

struct SolveReport {
    Bound bound = Bound::Lower;
    Method method = Method::Policy;
    Vector solution;
    /// Policy iteration: index n at which h_n = h_{n-1} was observed.
    /// Value iteration: number of operator applications.
    /// Brute force: number of vertex combinations enumerated.
    unsigned iterations = 0;
    /// Linear systems solved.
    unsigned linear_solves = 0;
    double residual = 0.0;
    bool tolerance_limited = false;
    std::optional<Policy> policy;  // attaining policy (policy iteration, brute force)
    std::vector<TraceEntry> trace;  // filled when requested
    double wall_time = 0.0;
};

struct PolicyIterationOptions {
    Bound bound = Bound::Lower;
    InitRule init = InitRule::greedy();
    double tol = 1e-9;
    /// 0 means 10 * |X|.
    unsigned max_iterations = 0;
    bool trace = false;
    /// Skip the up-front reachability check (callers that already ran it).
    bool assume_reachable = false;
};

struct ValueIterationOptions {
    Bound bound = Bound::Lower;
    double tol = 1e-9;
    unsigned max_iterations = 1'000'000;
    bool trace = false;
    bool assume_reachable = false;
};

struct BruteForceOptions {
    Bound bound = Bound::Lower;
    std::uint64_t max_combinations = 1'000'000;
};

/// Raised when an iteration cap is hit; carries whatever trace was built.
class MaxIterationsExceeded : public Error {
public:
    MaxIterationsExceeded(const std::string& what, std::vector<TraceEntry> trace)
        : Error(ErrorKind::MaxIterationsExceeded, what), trace_(std::move(trace)) {}
    const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

private:
    std::vector<TraceEntry> trace_;
};

Policy initial_policy(const Model& model, const InitRule& rule);

/// Exact hitting times for the chain selected by `policy`.
Vector solve_for_policy(const Model& model, const Policy& policy);

/// ||h - 1_{A^c} - 1_{A^c} . T h||_inf with T the lower (upper) operator.
double fixed_point_residual(const Model& model, std::span<const double> h, Bound bound);

/// Alternates an exact linear solve for the current extreme point with a
/// greedy improvement step through the lower (upper) operator. Stops when
/// the improved policy equals the current one, or successive solutions
/// differ by at most tol * (1 + ||h||).
SolveReport solve_policy(const Model& model, const PolicyIterationOptions& options = {});

/// h_0 = 1_{A^c}, h_n = 1_{A^c} + 1_{A^c} . T h_{n-1}; stops once successive
/// iterates are within tol in sup-norm.
SolveReport solve_value(const Model& model, const ValueIterationOptions& options = {});

/// Componentwise extremum of the precise hitting times over every
/// combination of row vertices. V-rep rows only.
SolveReport solve_brute(const Model& model, const BruteForceOptions& options = {});

} // namespace imhit
