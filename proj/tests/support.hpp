#pragma once

// Test-only generators and independent oracles. Nothing here calls the
// library's LU, simplex or brute-force code.

#include "imhit/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace imhit::testing {

inline double uniform(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Flat Dirichlet on a random support; each coordinate is kept with
/// probability `keep` (at least one survives).
inline Vector random_pmf(std::mt19937_64& rng, std::size_t n, double keep = 1.0) {
    Vector p(n, 0.0);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
        if (uniform(rng) < keep) support.push_back(i);
    }
    if (support.empty()) support.push_back(pick(rng, n));
    double total = 0.0;
    for (std::size_t i : support) {
        p[i] = -std::log(1.0 - uniform(rng));
        total += p[i];
    }
    for (double& v : p) v /= total;
    // Put the rounding error on the largest entry so the row check passes.
    const auto largest = std::max_element(p.begin(), p.end()) - p.begin();
    p[largest] += 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
    return p;
}

inline std::vector<std::string> labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

inline std::vector<std::size_t> random_target(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t k = 1 + pick(rng, n - 1);
    std::vector<std::size_t> target(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(target.begin(), target.end());
    return target;
}

inline VertexRow random_vertex_row(std::mt19937_64& rng, std::size_t n, std::size_t max_vertices, double keep) {
    VertexRow row;
    const std::size_t k = 1 + pick(rng, max_vertices);
    for (std::size_t i = 0; i < k; ++i) row.vertices.push_back(random_pmf(rng, n, keep));
    return row;
}

/// Box constraints around a random pmf q, plus optionally one general
/// inequality and one equality that q satisfies. Always feasible.
inline ConstraintRow random_constraint_row(std::mt19937_64& rng, std::size_t n) {
    const Vector q = random_pmf(rng, n);
    ConstraintRow row;
    for (std::size_t y = 0; y < n; ++y) {
        if (uniform(rng) < 0.6) {
            Vector a(n, 0.0);
            a[y] = 1.0;
            row.constraints.push_back({a, Relation::GreaterEqual, q[y] * uniform(rng)});
        }
        if (uniform(rng) < 0.4) {
            Vector a(n, 0.0);
            a[y] = 1.0;
            row.constraints.push_back({a, Relation::LessEqual, q[y] + (1.0 - q[y]) * uniform(rng)});
        }
    }
    if (uniform(rng) < 0.5) {
        Vector a(n);
        for (double& v : a) v = 2.0 * uniform(rng) - 1.0;
        double aq = 0.0;
        for (std::size_t y = 0; y < n; ++y) aq += a[y] * q[y];
        row.constraints.push_back({a, Relation::LessEqual, aq + 0.2 * uniform(rng)});
    }
    if (uniform(rng) < 0.15 && n >= 3) {
        Vector a(n, 0.0);
        a[0] = 1.0;
        a[1] = 1.0;
        row.constraints.push_back({a, Relation::Equal, q[0] + q[1]});
    }
    return row;
}

/// V-rep model with |X| = n, 1..max_vertices vertices per row and a random
/// non-trivial target.
inline ModelData random_vrep_data(std::mt19937_64& rng, std::size_t n, std::size_t max_vertices, double keep = 1.0) {
    ModelData data{labels(n), random_target(rng, n), {}};
    for (std::size_t x = 0; x < n; ++x) data.rows.emplace_back(random_vertex_row(rng, n, max_vertices, keep));
    return data;
}

/// Each row is V-rep or H-rep with probability 1/2.
inline ModelData random_mixed_data(std::mt19937_64& rng, std::size_t n, std::size_t max_vertices = 3) {
    ModelData data{labels(n), random_target(rng, n), {}};
    for (std::size_t x = 0; x < n; ++x) {
        if (uniform(rng) < 0.5) data.rows.emplace_back(random_vertex_row(rng, n, max_vertices, 1.0));
        else data.rows.emplace_back(random_constraint_row(rng, n));
    }
    return data;
}

/// Gauss-Jordan elimination with full pivoting. Returns nullopt if singular.
inline std::optional<Vector> oracle_solve(std::vector<Vector> a, Vector b) {
    const std::size_t n = b.size();
    std::vector<std::size_t> col(n);
    std::iota(col.begin(), col.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        for (std::size_t r = k; r < n; ++r) {
            for (std::size_t c = k; c < n; ++c) {
                if (std::abs(a[r][c]) > std::abs(a[pr][pc])) {
                    pr = r;
                    pc = c;
                }
            }
        }
        if (std::abs(a[pr][pc]) < 1e-13) return std::nullopt;
        std::swap(a[k], a[pr]);
        std::swap(b[k], b[pr]);
        for (auto& row : a) std::swap(row[k], row[pc]);
        std::swap(col[k], col[pc]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k) continue;
            const double f = a[r][k] / a[k][k];
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            b[r] -= f * b[k];
        }
    }
    Vector x(n);
    for (std::size_t k = 0; k < n; ++k) x[col[k]] = b[k] / a[k][k];
    return x;
}

/// Hitting times of a precise chain via the oracle solver.
inline std::optional<Vector> oracle_hitting_times(const std::vector<Vector>& t, const std::vector<bool>& in_target) {
    std::vector<std::size_t> free;
    for (std::size_t x = 0; x < t.size(); ++x) {
        if (!in_target[x]) free.push_back(x);
    }
    std::vector<Vector> a(free.size(), Vector(free.size()));
    for (std::size_t i = 0; i < free.size(); ++i) {
        for (std::size_t j = 0; j < free.size(); ++j) a[i][j] = (i == j ? 1.0 : 0.0) - t[free[i]][free[j]];
    }
    auto u = oracle_solve(a, Vector(free.size(), 1.0));
    if (!u) return std::nullopt;
    Vector h(t.size(), 0.0);
    for (std::size_t i = 0; i < free.size(); ++i) h[free[i]] = (*u)[i];
    return h;
}

struct OracleBounds {
    Vector lower;
    Vector upper;
};

/// Componentwise min/max of h_T over every combination of row vertices.
inline OracleBounds oracle_bounds(const ModelData& data) {
    const std::size_t n = data.labels.size();
    std::vector<bool> in_target(n, false);
    for (std::size_t t : data.target) in_target[t] = true;
    std::vector<const VertexRow*> rows;
    for (const auto& r : data.rows) rows.push_back(&std::get<VertexRow>(r));

    OracleBounds out{Vector(n, INFINITY), Vector(n, -INFINITY)};
    std::vector<std::size_t> choice(n, 0);
    for (;;) {
        std::vector<Vector> t(n);
        for (std::size_t x = 0; x < n; ++x) t[x] = rows[x]->vertices[choice[x]];
        auto h = oracle_hitting_times(t, in_target);
        if (!h) throw std::runtime_error("oracle: singular combination");
        for (std::size_t x = 0; x < n; ++x) {
            out.lower[x] = std::min(out.lower[x], (*h)[x]);
            out.upper[x] = std::max(out.upper[x], (*h)[x]);
        }
        std::size_t x = 0;
        for (; x < n; ++x) {
            if (++choice[x] < rows[x]->vertices.size()) break;
            choice[x] = 0;
        }
        if (x == n) break;
    }
    return out;
}

/// Extreme points of {p >= 0, sum p = 1, listed constraints} by brute-force
/// enumeration of active sets. Small dimensions only.
inline std::vector<Vector> oracle_vertices(const ConstraintRow& row, std::size_t n) {
    struct Halfspace {
        Vector a;
        double b;
        bool equality;
    };
    std::vector<Halfspace> all;
    all.push_back({Vector(n, 1.0), 1.0, true});
    for (const auto& c : row.constraints) {
        if (c.relation == Relation::Equal) all.push_back({c.coefficients, c.bound, true});
    }
    std::vector<Halfspace> ineq;
    for (std::size_t y = 0; y < n; ++y) {
        Vector a(n, 0.0);
        a[y] = 1.0;
        ineq.push_back({a, 0.0, false});
    }
    for (const auto& c : row.constraints) {
        if (c.relation == Relation::Equal) continue;
        Vector a = c.coefficients;
        double b = c.bound;
        ineq.push_back({a, b, false});
    }

    const auto feasible = [&](const Vector& p) {
        double sum = 0.0;
        for (double v : p) {
            if (v < -1e-9) return false;
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) return false;
        for (const auto& c : row.constraints) {
            double lhs = 0.0;
            for (std::size_t y = 0; y < n; ++y) lhs += c.coefficients[y] * p[y];
            if (c.relation == Relation::LessEqual && lhs > c.bound + 1e-9) return false;
            if (c.relation == Relation::GreaterEqual && lhs < c.bound - 1e-9) return false;
            if (c.relation == Relation::Equal && std::abs(lhs - c.bound) > 1e-9) return false;
        }
        return true;
    };

    std::vector<Vector> vertices;
    const std::size_t m = ineq.size();
    // Every subset of inequalities made tight, combined with all equalities;
    // keep square non-singular systems with feasible solutions.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<Vector> a;
        Vector b;
        for (const auto& h : all) {
            a.push_back(h.a);
            b.push_back(h.b);
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1) {
                a.push_back(ineq[i].a);
                b.push_back(ineq[i].b);
            }
        }
        if (a.size() != n) continue;
        auto p = oracle_solve(a, b);
        if (!p || !feasible(*p)) continue;
        const bool known = std::any_of(vertices.begin(), vertices.end(), [&](const Vector& v) {
            for (std::size_t y = 0; y < n; ++y) {
                if (std::abs(v[y] - (*p)[y]) > 1e-9) return false;
            }
            return true;
        });
        if (!known) vertices.push_back(*p);
    }
    return vertices;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace imhit::testing
