#pragma once

#include "imhit/dense.hpp"

#include <span>
#include <vector>

namespace imhit {

/// Dense LU factorisation with partial pivoting, P A = L U.
class LuDecomposition {
public:
    /// Throws Error(SingularSystem) when a pivot falls below
    /// `pivot_floor` times the largest entry of A.
    explicit LuDecomposition(Matrix a, double pivot_floor = 1e-14);

    Vector solve(std::span<const double> rhs) const;
    std::size_t size() const noexcept { return lu_.rows(); }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

/// Expected hitting times of `target` for one precise chain: zero on the
/// target, (I - T|_{A^c})^{-1} 1 elsewhere. `in_target` flags A.
///
/// Throws Error(SingularSystem) if the restricted system is singular or the
/// residual check fails, both of which mean the chain cannot reach A from
/// some state.
Vector solve_precise(const Matrix& transition, const std::vector<bool>& in_target);

/// sup-norm of h - 1_{A^c} - 1_{A^c} . T h.
double precise_residual(const Matrix& transition, const std::vector<bool>& in_target, std::span<const double> h);

} // namespace imhit
