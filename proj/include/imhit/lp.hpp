#pragma once

#include "imhit/polytope.hpp"

#include <span>

namespace imhit::lp {

inline constexpr double kPivotTolerance = 1e-10;
inline constexpr double kFeasibilityTolerance = 1e-9;

struct LpSolution {
    double optimum = 0.0;
    Vector vertex;
    Selector basis;
};

/// Two-phase dense simplex with Bland's rule. Returns a basic feasible
/// solution, so `vertex` is an extreme point of the row polytope. Throws
/// Error(Infeasible) if phase one cannot drive the artificials to zero.
LpSolution minimize_row(const ConstraintRow& row, std::span<const double> objective);
LpSolution maximize_row(const ConstraintRow& row, std::span<const double> objective);

/// Exact scan over the listed vertices; ties go to the smallest index.
LpSolution minimize_row_vrep(const VertexRow& row, std::span<const double> objective);
LpSolution maximize_row_vrep(const VertexRow& row, std::span<const double> objective);

/// Reconstructs the vertex named by `basis` by solving the active equality
/// system. Throws Error(SelectorOutOfRange) if the basis is malformed,
/// singular, or names an infeasible point.
Vector vertex_from_basis(const ConstraintRow& row, std::size_t dimension, const Basis& basis);

bool is_feasible(const ConstraintRow& row, std::size_t dimension);

/// Largest violation of the implicit simplex constraints and the listed ones.
double max_violation(const ConstraintRow& row, std::span<const double> point);

} // namespace imhit::lp
