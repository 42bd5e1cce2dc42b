#include "imhit/linsolve.hpp"
#include "imhit/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace imhit {

LuDecomposition::LuDecomposition(Matrix a, double pivot_floor) : lu_(std::move(a)), perm_(lu_.rows()) {
    const std::size_t n = lu_.rows();
    std::iota(perm_.begin(), perm_.end(), 0);
    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r) scale = std::max(scale, sup_norm(lu_.row(r)));
    if (scale == 0.0) scale = 1.0;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(lu_(r, k)) > std::abs(lu_(piv, k))) piv = r;
        }
        if (!(std::abs(lu_(piv, k)) > pivot_floor * scale)) {
            throw Error(ErrorKind::SingularSystem, "singular pivot at column " + std::to_string(k));
        }
        if (piv != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(piv).begin());
            std::swap(perm_[k], perm_[piv]);
        }
        const double inv = 1.0 / lu_(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = lu_(r, k) * inv;
            lu_(r, k) = f;
            if (f == 0.0) continue;
            auto target = lu_.row(r);
            const auto source = lu_.row(k);
            for (std::size_t c = k + 1; c < n; ++c) target[c] -= f * source[c];
        }
    }
}

Vector LuDecomposition::solve(std::span<const double> rhs) const {
    const std::size_t n = lu_.rows();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

Vector solve_precise(const Matrix& transition, const std::vector<bool>& in_target) {
    const std::size_t n = transition.rows();
    std::vector<std::size_t> free_states;
    for (std::size_t x = 0; x < n; ++x) {
        if (!in_target[x]) free_states.push_back(x);
    }
    const std::size_t k = free_states.size();

    Matrix system(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            system(i, j) = (i == j ? 1.0 : 0.0) - transition(free_states[i], free_states[j]);
        }
    }
    const Vector u = LuDecomposition(std::move(system)).solve(Vector(k, 1.0));

    Vector h(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        if (!std::isfinite(u[i]) || u[i] < 0.0) {
            throw Error(ErrorKind::SingularSystem, "restricted system has no non-negative finite solution");
        }
        h[free_states[i]] = u[i];
    }
    const double residual = precise_residual(transition, in_target, h);
    if (!(residual <= 1e-9 * (1.0 + sup_norm(h)))) {
        throw Error(ErrorKind::SingularSystem, "residual check failed (" + std::to_string(residual) + ")");
    }
    return h;
}

double precise_residual(const Matrix& transition, const std::vector<bool>& in_target, std::span<const double> h) {
    const Vector th = multiply(transition, h);
    double worst = 0.0;
    for (std::size_t x = 0; x < h.size(); ++x) {
        const double rhs = in_target[x] ? 0.0 : 1.0 + th[x];
        worst = std::max(worst, std::abs(h[x] - rhs));
    }
    return worst;
}

} // namespace imhit
