#include "imhit/model.hpp"
#include "imhit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace imhit {

std::string_view to_string(IssueCode code) {
    switch (code) {
    case IssueCode::TooFewStates: return "TooFewStates";
    case IssueCode::DuplicateLabel: return "DuplicateLabel";
    case IssueCode::EmptyTarget: return "EmptyTarget";
    case IssueCode::TargetIsWholeSpace: return "TargetIsWholeSpace";
    case IssueCode::TargetOutOfRange: return "TargetOutOfRange";
    case IssueCode::DuplicateTarget: return "DuplicateTarget";
    case IssueCode::RowCountMismatch: return "RowCountMismatch";
    case IssueCode::EmptyRow: return "EmptyRow";
    case IssueCode::DimensionMismatch: return "DimensionMismatch";
    case IssueCode::NonFiniteValue: return "NonFiniteValue";
    case IssueCode::NonStochasticVertex: return "NonStochasticVertex";
    case IssueCode::InfeasibleRow: return "InfeasibleRow";
    }
    return "Unknown";
}

bool ValidationReport::has(IssueCode code) const {
    return std::any_of(issues.begin(), issues.end(), [code](const auto& i) { return i.code == code; });
}

namespace {

std::string summarize(const ValidationReport& report) {
    std::ostringstream out;
    out << "model rejected:";
    for (const auto& issue : report.issues) out << ' ' << to_string(issue.code) << " (" << issue.message << ");";
    return out.str();
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void check_vertex_row(const VertexRow& row, std::size_t x, std::size_t n, ValidationReport& report,
                      RowDiagnostic& diag) {
    diag.vertex_form = true;
    diag.entries = row.vertices.size();
    if (row.vertices.empty()) {
        report.issues.push_back({IssueCode::EmptyRow, x, std::nullopt, "row has no vertices"});
        diag.ok = false;
        return;
    }
    for (std::size_t k = 0; k < row.vertices.size(); ++k) {
        const Vector& v = row.vertices[k];
        if (v.size() != n) {
            report.issues.push_back({IssueCode::DimensionMismatch, x, k,
                                     "vertex has " + std::to_string(v.size()) + " entries"});
            diag.ok = false;
            continue;
        }
        if (!all_finite(v)) {
            report.issues.push_back({IssueCode::NonFiniteValue, x, k, "vertex has a non-finite entry"});
            diag.ok = false;
            continue;
        }
        double sum = 0.0;
        bool negative = false;
        for (double p : v) {
            sum += p;
            negative = negative || p < 0.0;
        }
        if (negative || std::abs(sum - 1.0) > kRowTolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "vertex is not a pmf (sum " << sum << (negative ? ", negative entry" : "") << ")";
            report.issues.push_back({IssueCode::NonStochasticVertex, x, k, msg.str()});
            diag.ok = false;
        }
    }
}

void check_constraint_row(const ConstraintRow& row, std::size_t x, std::size_t n, ValidationReport& report,
                          RowDiagnostic& diag) {
    diag.vertex_form = false;
    diag.entries = row.constraints.size();
    for (std::size_t k = 0; k < row.constraints.size(); ++k) {
        const auto& c = row.constraints[k];
        if (c.coefficients.size() != n) {
            report.issues.push_back({IssueCode::DimensionMismatch, x, k,
                                     "constraint has " + std::to_string(c.coefficients.size()) + " coefficients"});
            diag.ok = false;
        } else if (!all_finite(c.coefficients) || !std::isfinite(c.bound)) {
            report.issues.push_back({IssueCode::NonFiniteValue, x, k, "constraint has a non-finite entry"});
            diag.ok = false;
        }
    }
    if (diag.ok && !lp::is_feasible(row, n)) {
        report.issues.push_back({IssueCode::InfeasibleRow, x, std::nullopt, "constraints admit no pmf"});
        diag.ok = false;
    }
}

} // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(ErrorKind::InvalidModel, summarize(report)), report_(std::move(report)) {}

ValidationReport validate(const ModelData& data) {
    ValidationReport report;
    const std::size_t n = data.labels.size();

    if (n < 2) report.issues.push_back({IssueCode::TooFewStates, std::nullopt, std::nullopt, "need at least 2 states"});
    std::set<std::string> seen;
    for (std::size_t x = 0; x < n; ++x) {
        if (!seen.insert(data.labels[x]).second) {
            report.issues.push_back({IssueCode::DuplicateLabel, x, std::nullopt, "label '" + data.labels[x] + "'"});
        }
    }

    std::set<std::size_t> target;
    for (std::size_t t : data.target) {
        if (t >= n) {
            report.issues.push_back({IssueCode::TargetOutOfRange, t, std::nullopt, "target index out of range"});
        } else if (!target.insert(t).second) {
            report.issues.push_back({IssueCode::DuplicateTarget, t, std::nullopt, "target listed twice"});
        }
    }
    if (data.target.empty()) {
        report.issues.push_back({IssueCode::EmptyTarget, std::nullopt, std::nullopt, "target set is empty"});
    } else if (n > 0 && target.size() == n) {
        report.issues.push_back(
            {IssueCode::TargetIsWholeSpace, std::nullopt, std::nullopt, "target set covers every state"});
    }

    if (data.rows.size() != n) {
        report.issues.push_back({IssueCode::RowCountMismatch, std::nullopt, std::nullopt,
                                 std::to_string(data.rows.size()) + " rows for " + std::to_string(n) + " states"});
        return report;
    }
    for (std::size_t x = 0; x < n; ++x) {
        RowDiagnostic diag{x};
        std::visit(
            [&](const auto& row) {
                if constexpr (std::is_same_v<std::decay_t<decltype(row)>, VertexRow>) {
                    check_vertex_row(row, x, n, report, diag);
                } else {
                    check_constraint_row(row, x, n, report, diag);
                }
            },
            data.rows[x]);
        report.rows.push_back(diag);
    }
    return report;
}

Model::Model(ModelData data) : data_(std::move(data)), in_target_(data_.labels.size(), false) {
    std::sort(data_.target.begin(), data_.target.end());
    for (std::size_t t : data_.target) in_target_[t] = true;
}

Model Model::create(ModelData data) {
    ValidationReport report = validate(data);
    if (!report.accepted()) throw ValidationError(std::move(report));
    return Model(std::move(data));
}

bool Model::all_vertex_rows() const {
    return std::all_of(data_.rows.begin(), data_.rows.end(),
                       [](const RowPolytope& r) { return std::holds_alternative<VertexRow>(r); });
}

Vector Model::complement_indicator() const {
    Vector v(size());
    for (std::size_t x = 0; x < size(); ++x) v[x] = in_target_[x] ? 0.0 : 1.0;
    return v;
}

Vector Model::target_indicator() const {
    Vector v(size());
    for (std::size_t x = 0; x < size(); ++x) v[x] = in_target_[x] ? 1.0 : 0.0;
    return v;
}

std::size_t count_changes(const Policy& a, const Policy& b) {
    const std::size_t n = std::min(a.selectors.size(), b.selectors.size());
    std::size_t changes = std::max(a.selectors.size(), b.selectors.size()) - n;
    for (std::size_t x = 0; x < n; ++x) {
        if (!(a.selectors[x] == b.selectors[x])) ++changes;
    }
    return changes;
}

Vector row_vertex(const Model& model, std::size_t x, const Selector& selector) {
    const RowPolytope& row = model.row(x);
    const auto out_of_range = [x] {
        return Error(ErrorKind::SelectorOutOfRange, "selector for state " + std::to_string(x) + " names no vertex");
    };
    if (const auto* vrow = std::get_if<VertexRow>(&row)) {
        const auto* idx = std::get_if<VertexIndex>(&selector);
        if (idx == nullptr || idx->index >= vrow->vertices.size()) throw out_of_range();
        return vrow->vertices[idx->index];
    }
    const auto* basis = std::get_if<Basis>(&selector);
    if (basis == nullptr) throw out_of_range();
    try {
        return lp::vertex_from_basis(std::get<ConstraintRow>(row), model.size(), *basis);
    } catch (const Error& e) {
        throw Error(ErrorKind::SelectorOutOfRange, "state " + std::to_string(x) + ": " + e.what());
    }
}

Matrix policy_to_matrix(const Model& model, const Policy& policy) {
    const std::size_t n = model.size();
    if (policy.selectors.size() != n) {
        throw Error(ErrorKind::SelectorOutOfRange, "policy has " + std::to_string(policy.selectors.size()) +
                                                       " selectors for " + std::to_string(n) + " states");
    }
    Matrix m(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        const Vector v = row_vertex(model, x, policy.selectors[x]);
        std::copy(v.begin(), v.end(), m.row(x).begin());
    }
    return m;
}

double stochastic_defect(const Matrix& m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double sum = 0.0;
        for (double v : m.row(r)) {
            worst = std::max(worst, -v);
            sum += v;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

} // namespace imhit
