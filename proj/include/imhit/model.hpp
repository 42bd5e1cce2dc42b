#pragma once

#include "imhit/dense.hpp"
#include "imhit/errors.hpp"
#include "imhit/polytope.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace imhit {

/// Tolerance on vertex coordinate sums. Rows outside it are rejected, never
/// renormalised.
inline constexpr double kRowTolerance = 1e-12;

/// Unvalidated description of an imprecise Markov chain: state labels in
/// index order, the target set A as indices, and one credal row per state.
struct ModelData {
    std::vector<std::string> labels;
    std::vector<std::size_t> target;
    std::vector<RowPolytope> rows;
    friend bool operator==(const ModelData&, const ModelData&) = default;
};

enum class IssueCode {
    TooFewStates,
    DuplicateLabel,
    EmptyTarget,
    TargetIsWholeSpace,
    TargetOutOfRange,
    DuplicateTarget,
    RowCountMismatch,
    EmptyRow,
    DimensionMismatch,
    NonFiniteValue,
    NonStochasticVertex,
    InfeasibleRow,
};

std::string_view to_string(IssueCode code);

struct ValidationIssue {
    IssueCode code;
    std::optional<std::size_t> state;
    std::optional<std::size_t> vertex;
    std::string message;
};

struct RowDiagnostic {
    std::size_t state = 0;
    bool vertex_form = true;
    std::size_t entries = 0;  // vertices or listed constraints
    bool ok = true;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    std::vector<RowDiagnostic> rows;

    bool accepted() const { return issues.empty(); }
    bool has(IssueCode code) const;
};

ValidationReport validate(const ModelData& data);

class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// A validated, immutable model. The only way to obtain one is through
/// `create`, which throws ValidationError when `validate` reports issues.
class Model {
public:
    static Model create(ModelData data);

    std::size_t size() const noexcept { return data_.labels.size(); }
    const std::vector<std::string>& labels() const noexcept { return data_.labels; }
    const std::vector<std::size_t>& target() const noexcept { return data_.target; }
    bool in_target(std::size_t x) const { return in_target_[x]; }
    const RowPolytope& row(std::size_t x) const { return data_.rows[x]; }
    const ModelData& data() const noexcept { return data_; }

    bool all_vertex_rows() const;
    /// 1 on A^c, 0 on A.
    Vector complement_indicator() const;
    Vector target_indicator() const;

private:
    explicit Model(ModelData data);

    ModelData data_;
    std::vector<bool> in_target_;
};

/// One selector per state; equal policies select the same vertices.
struct Policy {
    std::vector<Selector> selectors;
    friend bool operator==(const Policy&, const Policy&) = default;
};

std::size_t count_changes(const Policy& a, const Policy& b);

/// Row x of the result is the vertex of row polytope x named by selector x.
/// Throws Error(SelectorOutOfRange) for a selector that names no vertex.
Matrix policy_to_matrix(const Model& model, const Policy& policy);

/// Vertex of a single row named by `selector`.
Vector row_vertex(const Model& model, std::size_t x, const Selector& selector);

/// Largest deviation of `m` from being row-stochastic.
double stochastic_defect(const Matrix& m);

} // namespace imhit
