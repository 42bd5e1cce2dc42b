#pragma once

#include "imhit/dense.hpp"

#include <compare>
#include <cstddef>
#include <variant>
#include <vector>

namespace imhit {

/// A credal row given by its extreme points. Each vertex is a pmf over the
/// state space.
struct VertexRow {
    std::vector<Vector> vertices;
    friend bool operator==(const VertexRow&, const VertexRow&) = default;
};

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
    Vector coefficients;
    Relation relation = Relation::LessEqual;
    double bound = 0.0;
    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// A credal row given as {p : p >= 0, sum p = 1, a_i . p (rel_i) b_i}.
/// The simplex constraints are implicit and never listed.
struct ConstraintRow {
    std::vector<LinearConstraint> constraints;
    friend bool operator==(const ConstraintRow&, const ConstraintRow&) = default;
};

using RowPolytope = std::variant<VertexRow, ConstraintRow>;

/// Selects vertex `index` of a VertexRow.
struct VertexIndex {
    std::size_t index = 0;
    friend auto operator<=>(const VertexIndex&, const VertexIndex&) = default;
};

/// Sorted basic columns of a ConstraintRow's standard form. Columns
/// [0, n) are the pmf coordinates, the rest are slack/surplus variables of
/// the inequality constraints in listing order.
struct Basis {
    std::vector<std::size_t> columns;
    friend auto operator<=>(const Basis&, const Basis&) = default;
};

using Selector = std::variant<VertexIndex, Basis>;

} // namespace imhit
