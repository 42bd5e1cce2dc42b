#include "imhit/operator.hpp"
#include "imhit/lp.hpp"

#include <stdexcept>

namespace imhit {

std::string_view to_string(Bound bound) { return bound == Bound::Lower ? "lower" : "upper"; }

namespace {

lp::LpSolution optimise_row(const RowPolytope& row, std::span<const double> f, Bound bound) {
    if (const auto* v = std::get_if<VertexRow>(&row)) {
        return bound == Bound::Lower ? lp::minimize_row_vrep(*v, f) : lp::maximize_row_vrep(*v, f);
    }
    const auto& c = std::get<ConstraintRow>(row);
    return bound == Bound::Lower ? lp::minimize_row(c, f) : lp::maximize_row(c, f);
}

void check_dimension(const Model& model, std::span<const double> f) {
    if (f.size() != model.size()) {
        throw std::invalid_argument("function has " + std::to_string(f.size()) + " entries, model has " +
                                    std::to_string(model.size()) + " states");
    }
}

} // namespace

OperatorResult apply(const Model& model, std::span<const double> f, Bound bound) {
    check_dimension(model, f);
    OperatorResult result;
    result.value.resize(model.size());
    result.policy.selectors.reserve(model.size());
    for (std::size_t x = 0; x < model.size(); ++x) {
        lp::LpSolution sol = optimise_row(model.row(x), f, bound);
        result.value[x] = sol.optimum;
        result.policy.selectors.push_back(std::move(sol.basis));
    }
    return result;
}

OperatorResult lower_apply(const Model& model, std::span<const double> f) { return apply(model, f, Bound::Lower); }

OperatorResult upper_apply(const Model& model, std::span<const double> f) { return apply(model, f, Bound::Upper); }

Vector lower_apply_n(const Model& model, std::span<const double> f, unsigned n) {
    if (n == 0) throw std::invalid_argument("lower_apply_n needs n >= 1");
    Vector g(f.begin(), f.end());
    for (unsigned i = 0; i < n; ++i) g = lower_apply(model, g).value;
    return g;
}

Vector upper_apply_n(const Model& model, std::span<const double> f, unsigned n) {
    if (n == 0) throw std::invalid_argument("upper_apply_n needs n >= 1");
    Vector g(f.begin(), f.end());
    for (unsigned i = 0; i < n; ++i) g = upper_apply(model, g).value;
    return g;
}

} // namespace imhit
