#include "imhit/lp.hpp"
#include "imhit/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace imhit::lp {

namespace {

// Equality form A x = b, b >= 0, x >= 0 of a ConstraintRow. Row 0 is the
// normalisation sum p = 1; row i + 1 is listed constraint i.
struct StandardForm {
    Matrix a;
    Vector b;
    std::size_t structural = 0;
};

StandardForm build_standard_form(const ConstraintRow& row, std::size_t n) {
    std::size_t slacks = 0;
    for (const auto& c : row.constraints) {
        if (c.coefficients.size() != n) {
            throw Error(ErrorKind::InvalidModel,
                        "constraint has " + std::to_string(c.coefficients.size()) +
                            " coefficients, expected " + std::to_string(n));
        }
        if (c.relation != Relation::Equal) ++slacks;
    }

    const std::size_t m = row.constraints.size() + 1;
    StandardForm sf{Matrix(m, n + slacks), Vector(m), n};
    for (std::size_t j = 0; j < n; ++j) sf.a(0, j) = 1.0;
    sf.b[0] = 1.0;

    std::size_t slack = n;
    for (std::size_t i = 0; i < row.constraints.size(); ++i) {
        const auto& c = row.constraints[i];
        for (std::size_t j = 0; j < n; ++j) sf.a(i + 1, j) = c.coefficients[j];
        if (c.relation == Relation::LessEqual) sf.a(i + 1, slack++) = 1.0;
        if (c.relation == Relation::GreaterEqual) sf.a(i + 1, slack++) = -1.0;
        sf.b[i + 1] = c.bound;
        if (sf.b[i + 1] < 0.0) {
            for (double& v : sf.a.row(i + 1)) v = -v;
            sf.b[i + 1] = -sf.b[i + 1];
        }
    }
    return sf;
}

// Dense simplex tableau with one artificial column per row. Columns
// [0, real) are structural/slack, [real, real + rows) artificial, and the
// last column holds the right-hand side.
class Tableau {
public:
    explicit Tableau(const StandardForm& sf)
        : rows_(sf.a.rows()), real_(sf.a.cols()), artificial_(rows_),
          t_(rows_, real_ + artificial_ + 1), basic_(rows_) {
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t j = 0; j < real_; ++j) t_(r, j) = sf.a(r, j);
            t_(r, real_ + r) = 1.0;
            t_(r, rhs_col()) = sf.b[r];
            basic_[r] = real_ + r;
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t real_columns() const { return real_; }
    std::size_t rhs_col() const { return real_ + artificial_; }
    bool is_artificial(std::size_t col) const { return col >= real_ && col < real_ + artificial_; }
    const std::vector<std::size_t>& basic() const { return basic_; }
    double rhs(std::size_t r) const { return t_(r, rhs_col()); }

    // Minimises cost . x over the current basis, restricted to entering
    // columns in [0, limit). Reduced costs are recomputed from the basis.
    void optimise(std::span<const double> cost, std::size_t limit) {
        Vector reduced(cost.begin(), cost.end());
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cb = cost[basic_[r]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < reduced.size(); ++j) reduced[j] -= cb * t_(r, j);
        }

        for (;;) {
            // Bland: smallest improving column enters.
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (reduced[j] < -kPivotTolerance) {
                    enter = j;
                    break;
                }
            }
            if (enter == limit) return;

            // Minimum ratio; ties go to the smallest basic variable.
            std::size_t leave = rows_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows_; ++r) {
                const double coef = t_(r, enter);
                if (coef <= kPivotTolerance) continue;
                const double ratio = std::max(0.0, rhs(r)) / coef;
                if (leave == rows_ || ratio < best - 1e-12) {
                    best = ratio;
                    leave = r;
                } else if (ratio <= best + 1e-12 && basic_[r] < basic_[leave]) {
                    leave = r;
                }
            }
            // Rows of the simplex bound every column, so this cannot happen
            // for a well-formed row polytope.
            if (leave == rows_) throw Error(ErrorKind::Infeasible, "unbounded linear program");

            pivot(leave, enter);
            const double factor = reduced[enter];
            for (std::size_t j = 0; j < reduced.size(); ++j) reduced[j] -= factor * t_(leave, j);
            reduced[enter] = 0.0;
        }
    }

    void pivot(std::size_t pr, std::size_t pc) {
        const std::size_t cols = t_.cols();
        const double inv = 1.0 / t_(pr, pc);
        for (std::size_t j = 0; j < cols; ++j) t_(pr, j) *= inv;
        t_(pr, pc) = 1.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            const double f = t_(r, pc);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) t_(r, j) -= f * t_(pr, j);
            t_(r, pc) = 0.0;
        }
        basic_[pr] = pc;
    }

    // Pivots zero-level artificials out of the basis; rows where that is
    // impossible are linearly redundant and get dropped.
    void expel_artificials() {
        for (std::size_t r = 0; r < rows_;) {
            if (!is_artificial(basic_[r])) {
                ++r;
                continue;
            }
            std::size_t col = real_;
            for (std::size_t j = 0; j < real_; ++j) {
                if (std::abs(t_(r, j)) > kPivotTolerance) {
                    col = j;
                    break;
                }
            }
            if (col < real_) {
                pivot(r, col);
                ++r;
            } else {
                drop_row(r);
            }
        }
    }

private:
    void drop_row(std::size_t r) {
        Matrix next(rows_ - 1, t_.cols());
        for (std::size_t i = 0, k = 0; i < rows_; ++i) {
            if (i == r) continue;
            std::copy(t_.row(i).begin(), t_.row(i).end(), next.row(k).begin());
            ++k;
        }
        t_ = std::move(next);
        basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
    }

    std::size_t rows_;
    std::size_t real_;
    std::size_t artificial_;
    Matrix t_;
    std::vector<std::size_t> basic_;
};

void check_objective(std::span<const double> objective) {
    for (double v : objective) {
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidModel, "objective has a non-finite entry");
    }
}

Tableau phase_one(const StandardForm& sf) {
    Tableau tab(sf);
    const std::size_t width = tab.rhs_col();
    Vector cost(width, 0.0);
    for (std::size_t r = 0; r < tab.rows(); ++r) cost[tab.real_columns() + r] = 1.0;
    tab.optimise(cost, width);

    double infeasibility = 0.0;
    for (std::size_t r = 0; r < tab.rows(); ++r) {
        if (tab.is_artificial(tab.basic()[r])) infeasibility += tab.rhs(r);
    }
    if (infeasibility > kFeasibilityTolerance) {
        throw Error(ErrorKind::Infeasible,
                    "row polytope is empty (phase-one infeasibility " + std::to_string(infeasibility) + ")");
    }
    tab.expel_artificials();
    return tab;
}

} // namespace

LpSolution minimize_row(const ConstraintRow& row, std::span<const double> objective) {
    check_objective(objective);
    const std::size_t n = objective.size();
    const StandardForm sf = build_standard_form(row, n);
    Tableau tab = phase_one(sf);

    Vector cost(tab.rhs_col(), 0.0);
    std::copy(objective.begin(), objective.end(), cost.begin());
    tab.optimise(cost, tab.real_columns());

    LpSolution sol;
    sol.vertex.assign(n, 0.0);
    Basis basis;
    for (std::size_t r = 0; r < tab.rows(); ++r) {
        const std::size_t col = tab.basic()[r];
        basis.columns.push_back(col);
        if (col < n) sol.vertex[col] = std::max(0.0, tab.rhs(r));
    }
    std::sort(basis.columns.begin(), basis.columns.end());
    sol.optimum = dot(objective, sol.vertex);
    sol.basis = std::move(basis);
    return sol;
}

LpSolution maximize_row(const ConstraintRow& row, std::span<const double> objective) {
    Vector negated(objective.begin(), objective.end());
    for (double& v : negated) v = -v;
    LpSolution sol = minimize_row(row, negated);
    sol.optimum = -sol.optimum;
    return sol;
}

LpSolution minimize_row_vrep(const VertexRow& row, std::span<const double> objective) {
    assert(!row.vertices.empty());
    std::size_t best = 0;
    double best_value = dot(row.vertices[0], objective);
    for (std::size_t k = 1; k < row.vertices.size(); ++k) {
        const double value = dot(row.vertices[k], objective);
        if (value < best_value) {
            best = k;
            best_value = value;
        }
    }
    return {best_value, row.vertices[best], VertexIndex{best}};
}

LpSolution maximize_row_vrep(const VertexRow& row, std::span<const double> objective) {
    Vector negated(objective.begin(), objective.end());
    for (double& v : negated) v = -v;
    LpSolution sol = minimize_row_vrep(row, negated);
    sol.optimum = -sol.optimum;
    return sol;
}

Vector vertex_from_basis(const ConstraintRow& row, std::size_t dimension, const Basis& basis) {
    const StandardForm sf = build_standard_form(row, dimension);
    const std::size_t m = sf.a.rows();
    const std::size_t k = basis.columns.size();
    const auto reject = [](const std::string& why) {
        return Error(ErrorKind::SelectorOutOfRange, "invalid basis: " + why);
    };

    if (k == 0 || k > m) throw reject("wrong number of columns");
    for (std::size_t i = 0; i < k; ++i) {
        if (basis.columns[i] >= sf.a.cols()) throw reject("column out of range");
        if (i > 0 && basis.columns[i] <= basis.columns[i - 1]) throw reject("columns not strictly increasing");
    }

    // Augmented m x (k + 1) system, solved by elimination with row pivoting
    // so redundant rows are tolerated and checked for consistency.
    Matrix aug(m, k + 1);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < k; ++i) aug(r, i) = sf.a(r, basis.columns[i]);
        aug(r, k) = sf.b[r];
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t piv = i;
        for (std::size_t r = i + 1; r < m; ++r) {
            if (std::abs(aug(order[r], i)) > std::abs(aug(order[piv], i))) piv = r;
        }
        if (std::abs(aug(order[piv], i)) < 1e-12) throw reject("singular column set");
        std::swap(order[i], order[piv]);
        const std::size_t pr = order[i];
        for (std::size_t r = 0; r < m; ++r) {
            if (r == pr) continue;
            const double f = aug(r, i) / aug(pr, i);
            if (f == 0.0) continue;
            for (std::size_t j = i; j <= k; ++j) aug(r, j) -= f * aug(pr, j);
        }
    }
    for (std::size_t i = k; i < m; ++i) {
        if (std::abs(aug(order[i], k)) > kFeasibilityTolerance) throw reject("inconsistent active system");
    }

    Vector point(dimension, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        const double x = aug(order[i], k) / aug(order[i], i);
        if (x < -kFeasibilityTolerance) throw reject("basic solution is infeasible");
        if (basis.columns[i] < dimension) point[basis.columns[i]] = std::max(0.0, x);
    }
    if (max_violation(row, point) > kFeasibilityTolerance) throw reject("vertex violates a constraint");
    return point;
}

bool is_feasible(const ConstraintRow& row, std::size_t dimension) {
    try {
        (void)phase_one(build_standard_form(row, dimension));
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Infeasible) return false;
        throw;
    }
}

double max_violation(const ConstraintRow& row, std::span<const double> point) {
    double worst = 0.0;
    double total = 0.0;
    for (double v : point) {
        worst = std::max(worst, -v);
        total += v;
    }
    worst = std::max(worst, std::abs(total - 1.0));
    for (const auto& c : row.constraints) {
        const double lhs = dot(c.coefficients, point);
        switch (c.relation) {
        case Relation::LessEqual: worst = std::max(worst, lhs - c.bound); break;
        case Relation::GreaterEqual: worst = std::max(worst, c.bound - lhs); break;
        case Relation::Equal: worst = std::max(worst, std::abs(lhs - c.bound)); break;
        }
    }
    return worst;
}

} // namespace imhit::lp
