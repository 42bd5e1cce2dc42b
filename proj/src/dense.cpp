#include "imhit/dense.hpp"
#include "imhit/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace imhit {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::SelectorOutOfRange: return "SelectorOutOfRange";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ReachabilityViolation: return "ReachabilityViolation";
    case ErrorKind::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorKind::TooManyCombinations: return "TooManyCombinations";
    case ErrorKind::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Vector multiply(const Matrix& m, std::span<const double> v) {
    assert(m.cols() == v.size());
    Vector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = dot(m.row(r), v);
    return out;
}

} // namespace imhit
