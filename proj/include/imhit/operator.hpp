#pragma once

#include "imhit/model.hpp"

#include <span>

namespace imhit {

enum class Bound { Lower, Upper };

std::string_view to_string(Bound bound);

/// Value of the lower (or upper) transition operator applied to f, and a
/// policy whose matrix attains that value row by row.
struct OperatorResult {
    Vector value;
    Policy policy;
};

/// [lower f](x) = min over row polytope x of p . f
OperatorResult lower_apply(const Model& model, std::span<const double> f);
/// [upper f](x) = max over row polytope x of p . f = -[lower(-f)](x)
OperatorResult upper_apply(const Model& model, std::span<const double> f);
OperatorResult apply(const Model& model, std::span<const double> f, Bound bound);

/// n-fold composition of lower_apply (n >= 1).
Vector lower_apply_n(const Model& model, std::span<const double> f, unsigned n);
Vector upper_apply_n(const Model& model, std::span<const double> f, unsigned n);

} // namespace imhit
