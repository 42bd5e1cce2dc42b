#pragma once

#include "imhit/model.hpp"
#include "imhit/solvers.hpp"

#include <cstdint>
#include <json.hpp>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace imhit::bench {

/// Uniform draw from the probability simplex of dimension `size`
/// (normalised i.i.d. unit-rate exponentials, i.e. flat Dirichlet).
Vector sample_simplex(std::mt19937_64& rng, std::size_t size);

/// Each row is the convex hull of `vertices_per_row` uniform pmfs; the
/// target is the last state. Deterministic for a given seed.
ModelData random_model_data(std::size_t size, std::size_t vertices_per_row, std::uint64_t seed);
Model random_model(std::size_t size, std::size_t vertices_per_row, std::uint64_t seed);

/// Stable per-trial seed, independent of scheduling.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t size, std::uint64_t trial, std::uint64_t attempt = 0);

struct BenchConfig {
    std::vector<std::size_t> sizes;
    std::size_t vertices_per_row = 50;
    unsigned trials = 50;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    InitRule init = InitRule::greedy();
    /// 0 means std::thread::hardware_concurrency().
    unsigned jobs = 0;
    /// Resamples allowed per trial when a model fails reachability.
    unsigned max_regenerations = 100;
};

/// Throws std::invalid_argument for sizes < 2, zero trials or zero vertices.
void check_config(const BenchConfig& config);

struct TrialRecord {
    std::size_t size = 0;
    unsigned trial = 0;
    unsigned iterations = 0;  // 0 when the solve failed
    double residual = 0.0;
    double wall_time = 0.0;
    unsigned regenerations = 0;
    std::uint64_t seed_used = 0;
    std::string error;  // empty on success
};

/// Runs every (size, trial) pair, possibly in parallel. Records come back
/// ordered by (size, trial) regardless of scheduling. Per-trial solver
/// errors are recorded, not thrown.
std::vector<TrialRecord> run_experiment(const BenchConfig& config);

TrialRecord run_trial(const BenchConfig& config, std::size_t size, unsigned trial);

/// CSV with header size,trial,iterations,residual,wall_time_s,regenerations,seed_used
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records, bool include_wall_time = true);

/// {"<size>": {"<iterations>": count, ...}, ...}
nlohmann::json iteration_histogram(const std::vector<TrialRecord>& records);

} // namespace imhit::bench
