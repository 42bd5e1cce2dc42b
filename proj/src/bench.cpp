#include "imhit/bench.hpp"
#include "imhit/reachability.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <stdexcept>
#include <thread>

namespace imhit::bench {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform on (0, 1]: 53 random mantissa bits, shifted off zero.
double open_unit(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; }

} // namespace

Vector sample_simplex(std::mt19937_64& rng, std::size_t size) {
    Vector p(size);
    double total = 0.0;
    for (double& v : p) {
        v = -std::log(open_unit(rng));
        total += v;
    }
    for (double& v : p) v /= total;
    // Pin the normalisation error on the largest coordinate so the pmf
    // passes the 1e-12 row check even at |X| = 10^3.
    double sum = 0.0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < size; ++i) {
        sum += p[i];
        if (p[i] > p[largest]) largest = i;
    }
    p[largest] += 1.0 - sum;
    return p;
}

ModelData random_model_data(std::size_t size, std::size_t vertices_per_row, std::uint64_t seed) {
    if (size < 2 || vertices_per_row == 0) throw std::invalid_argument("random model needs size >= 2 and >= 1 vertex");
    std::mt19937_64 rng(seed);
    ModelData data;
    data.labels.reserve(size);
    for (std::size_t x = 0; x < size; ++x) data.labels.push_back("s" + std::to_string(x));
    data.target = {size - 1};
    data.rows.reserve(size);
    for (std::size_t x = 0; x < size; ++x) {
        VertexRow row;
        row.vertices.reserve(vertices_per_row);
        for (std::size_t k = 0; k < vertices_per_row; ++k) row.vertices.push_back(sample_simplex(rng, size));
        data.rows.emplace_back(std::move(row));
    }
    return data;
}

Model random_model(std::size_t size, std::size_t vertices_per_row, std::uint64_t seed) {
    return Model::create(random_model_data(size, vertices_per_row, seed));
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t size, std::uint64_t trial, std::uint64_t attempt) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ size);
    h = splitmix64(h ^ trial);
    return splitmix64(h ^ attempt);
}

void check_config(const BenchConfig& config) {
    if (config.sizes.empty()) throw std::invalid_argument("bench needs at least one size");
    for (std::size_t s : config.sizes) {
        if (s < 2) throw std::invalid_argument("bench sizes must be >= 2");
    }
    if (config.trials == 0) throw std::invalid_argument("bench needs trials >= 1");
    if (config.vertices_per_row == 0) throw std::invalid_argument("bench needs vertices >= 1");
}

TrialRecord run_trial(const BenchConfig& config, std::size_t size, unsigned trial) {
    TrialRecord record;
    record.size = size;
    record.trial = trial;
    const auto start = std::chrono::steady_clock::now();
    try {
        for (unsigned attempt = 0;; ++attempt) {
            record.seed_used = trial_seed(config.seed, size, trial, attempt);
            Model model = random_model(size, config.vertices_per_row, record.seed_used);
            if (!check_reachability(model).holds) {
                if (attempt >= config.max_regenerations) {
                    throw Error(ErrorKind::ReachabilityViolation, "no reachable model after resampling");
                }
                ++record.regenerations;
                continue;
            }
            PolicyIterationOptions options;
            options.bound = Bound::Lower;
            options.init = config.init;
            options.tol = config.tol;
            options.assume_reachable = true;
            const SolveReport report = solve_policy(model, options);
            record.iterations = report.iterations;
            record.residual = report.residual;
            break;
        }
    } catch (const std::exception& e) {
        record.iterations = 0;
        record.error = e.what();
    }
    record.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

std::vector<TrialRecord> run_experiment(const BenchConfig& config) {
    check_config(config);
    std::vector<std::pair<std::size_t, unsigned>> work;
    for (std::size_t size : config.sizes) {
        for (unsigned t = 0; t < config.trials; ++t) work.emplace_back(size, t);
    }
    std::vector<TrialRecord> records(work.size());

    unsigned jobs = config.jobs > 0 ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(work.size()));
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
            records[i] = run_trial(config, work[i].first, work[i].second);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    return records;
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records, bool include_wall_time) {
    out << "size,trial,iterations,residual,wall_time_s,regenerations,seed_used\n";
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.size << ',' << r.trial << ',' << r.iterations << ',' << r.residual << ',';
        if (include_wall_time) out << r.wall_time;
        out << ',' << r.regenerations << ',' << r.seed_used << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

nlohmann::json iteration_histogram(const std::vector<TrialRecord>& records) {
    std::map<std::size_t, std::map<unsigned, unsigned>> counts;
    for (const auto& r : records) ++counts[r.size][r.iterations];
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [size, hist] : counts) {
        nlohmann::json h = nlohmann::json::object();
        for (const auto& [iters, count] : hist) h[std::to_string(iters)] = count;
        doc[std::to_string(size)] = std::move(h);
    }
    return doc;
}

} // namespace imhit::bench
