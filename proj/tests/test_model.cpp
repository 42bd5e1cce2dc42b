#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imhit/lp.hpp"
#include "imhit/model.hpp"
#include "imhit/model_json.hpp"
#include "imhit/operator.hpp"
#include "support.hpp"

#include <cmath>
#include <limits>

using namespace imhit;
namespace t = imhit::testing;

namespace {

const std::string kFixtures = IMHIT_FIXTURE_DIR;

ModelData two_state(std::vector<Vector> vertices) {
    return {{"s", "t"}, {1}, {VertexRow{std::move(vertices)}, VertexRow{{{0.0, 1.0}}}}};
}

} // namespace

TEST_CASE("a precise stochastic chain is accepted") {
    const ModelData data = load_model_file(kFixtures + "/precise_chain.json");
    const ValidationReport report = validate(data);
    CHECK(report.accepted());
    REQUIRE(report.rows.size() == 3);
    for (const auto& row : report.rows) {
        CHECK(row.ok);
        CHECK(row.vertex_form);
        CHECK(row.entries == 1);
    }
    const Model model = Model::create(data);
    CHECK(model.size() == 3);
    CHECK(model.target() == std::vector<std::size_t>{2});
    CHECK(model.in_target(2));
    CHECK_FALSE(model.in_target(0));
    CHECK(model.complement_indicator() == Vector{1.0, 1.0, 0.0});
    CHECK(model.target_indicator() == Vector{0.0, 0.0, 1.0});
    CHECK(model.all_vertex_rows());
}

TEST_CASE("a vertex whose entries sum to 1.1 is rejected at its state and index") {
    const ModelData data = load_model_file(kFixtures + "/nonstochastic.json");
    const ValidationReport report = validate(data);
    CHECK_FALSE(report.accepted());
    REQUIRE(report.has(IssueCode::NonStochasticVertex));
    const auto& issue = report.issues.front();
    CHECK(issue.code == IssueCode::NonStochasticVertex);
    CHECK(issue.state == std::optional<std::size_t>{0});
    CHECK(issue.vertex == std::optional<std::size_t>{0});
    CHECK_FALSE(report.rows[0].ok);
    CHECK(report.rows[1].ok);
    CHECK_THROWS_AS(Model::create(data), ValidationError);
}

TEST_CASE("rows are checked to 1e-12 and never renormalised") {
    CHECK(validate(two_state({{0.5, 0.5 + 5e-13}})).accepted());
    CHECK(validate(two_state({{0.5, 0.5 + 5e-12}})).has(IssueCode::NonStochasticVertex));
    CHECK(validate(two_state({{1.2, -0.2}})).has(IssueCode::NonStochasticVertex));
    const Model model = Model::create(two_state({{0.5, 0.5 + 5e-13}}));
    CHECK(std::get<VertexRow>(model.row(0)).vertices[0][1] == 0.5 + 5e-13);
}

TEST_CASE("an H-rep row with no feasible pmf is rejected") {
    const ModelData data = load_model_file(kFixtures + "/infeasible_row.json");
    const ValidationReport report = validate(data);
    REQUIRE(report.has(IssueCode::InfeasibleRow));
    CHECK(report.issues.front().state == std::optional<std::size_t>{0});
    CHECK_FALSE(report.rows[0].vertex_form);
    CHECK(report.rows[0].entries == 2);
}

TEST_CASE("structural problems are reported") {
    SUBCASE("empty target") {
        ModelData d = two_state({{0.5, 0.5}});
        d.target.clear();
        CHECK(validate(d).has(IssueCode::EmptyTarget));
    }
    SUBCASE("target covering every state") {
        ModelData d = two_state({{0.5, 0.5}});
        d.target = {0, 1};
        CHECK(validate(d).has(IssueCode::TargetIsWholeSpace));
    }
    SUBCASE("target index out of range") {
        ModelData d = two_state({{0.5, 0.5}});
        d.target = {5};
        CHECK(validate(d).has(IssueCode::TargetOutOfRange));
    }
    SUBCASE("duplicate target") {
        ModelData d{{"a", "b", "c"}, {2, 2}, {}};
        for (int i = 0; i < 3; ++i) d.rows.emplace_back(VertexRow{{{0.0, 0.0, 1.0}}});
        CHECK(validate(d).has(IssueCode::DuplicateTarget));
    }
    SUBCASE("single state") {
        ModelData d{{"a"}, {0}, {VertexRow{{{1.0}}}}};
        CHECK(validate(d).has(IssueCode::TooFewStates));
    }
    SUBCASE("duplicate label") {
        ModelData d = two_state({{0.5, 0.5}});
        d.labels = {"s", "s"};
        CHECK(validate(d).has(IssueCode::DuplicateLabel));
    }
    SUBCASE("row count") {
        ModelData d = two_state({{0.5, 0.5}});
        d.rows.pop_back();
        CHECK(validate(d).has(IssueCode::RowCountMismatch));
    }
    SUBCASE("empty vertex row") {
        CHECK(validate(two_state({})).has(IssueCode::EmptyRow));
    }
    SUBCASE("wrong vertex length") {
        CHECK(validate(two_state({{1.0}})).has(IssueCode::DimensionMismatch));
    }
    SUBCASE("non-finite entry") {
        CHECK(validate(two_state({{std::numeric_limits<double>::quiet_NaN(), 0.5}})).has(IssueCode::NonFiniteValue));
    }
    SUBCASE("wrong constraint length") {
        ModelData d = two_state({{0.5, 0.5}});
        d.rows[0] = ConstraintRow{{{{1.0}, Relation::GreaterEqual, 0.1}}};
        CHECK(validate(d).has(IssueCode::DimensionMismatch));
    }
}

TEST_CASE("json schema errors") {
    CHECK_THROWS_AS(load_model_file(kFixtures + "/malformed.json"), Error);
    CHECK_THROWS_AS(load_model_file(kFixtures + "/does_not_exist.json"), FileError);
    CHECK_THROWS_AS(parse_model(R"({"states": ["a"], "target": []})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"states": ["a","b"], "target": ["z"], "rows": {}})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"states": ["a","b"], "target": ["b"],
        "rows": {"a": {"vertices": [[0,1]], "constraints": []}, "b": {"vertices": [[0,1]]}}})"),
                    Error);
    CHECK_THROWS_AS(parse_model(R"({"states": ["a","b"], "target": ["b"],
        "rows": {"a": {"constraints": [{"a": {"a": 1}, "rel": "<", "b": 0.5}]}, "b": {"vertices": [[0,1]]}}})"),
                    Error);
    try {
        parse_model("{");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidModel);
    }
}

TEST_CASE("constraint maps expand to dense coefficient vectors") {
    const ModelData data = load_model_file(kFixtures + "/interval_row.json");
    const auto& row = std::get<ConstraintRow>(data.rows[0]);
    REQUIRE(row.constraints.size() == 2);
    CHECK(row.constraints[0].coefficients == Vector{1.0, 0.0, 0.0});
    CHECK(row.constraints[0].relation == Relation::GreaterEqual);
    CHECK(row.constraints[0].bound == 0.2);
    CHECK(row.constraints[1].coefficients == Vector{0.0, 1.0, 0.0});
    CHECK(validate(data).accepted());
}

TEST_CASE("property: serialise then parse reproduces the model exactly") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + t::pick(rng, 5);
        const ModelData data = t::random_mixed_data(rng, n);
        const ModelData back = parse_model(serialize_model(data));
        REQUIRE(back == data);
        CHECK(serialize_model(back) == serialize_model(data));
    }
}

TEST_CASE("policy matrices") {
    const Model model = Model::create(load_model_file(kFixtures + "/two_vertex.json"));

    SUBCASE("vertex selectors pick listed vertices") {
        const Matrix m = policy_to_matrix(model, Policy{{VertexIndex{1}, VertexIndex{0}}});
        CHECK(m(0, 0) == 0.25);
        CHECK(m(0, 1) == 0.75);
        CHECK(m(1, 1) == 1.0);
        CHECK(stochastic_defect(m) <= 1e-12);
    }
    SUBCASE("out of range selector") {
        try {
            policy_to_matrix(model, Policy{{VertexIndex{2}, VertexIndex{0}}});
            FAIL("expected SelectorOutOfRange");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SelectorOutOfRange);
        }
    }
    SUBCASE("wrong selector kind or count") {
        CHECK_THROWS_AS(policy_to_matrix(model, Policy{{Basis{{0}}, VertexIndex{0}}}), Error);
        CHECK_THROWS_AS(policy_to_matrix(model, Policy{{VertexIndex{0}}}), Error);
    }
    SUBCASE("policy equality and change counts") {
        const Policy a{{VertexIndex{0}, VertexIndex{0}}};
        const Policy b{{VertexIndex{1}, VertexIndex{0}}};
        CHECK(a == a);
        CHECK_FALSE(a == b);
        CHECK(count_changes(a, b) == 1);
        CHECK(count_changes(a, a) == 0);
    }
}

TEST_CASE("basis selectors name the vertex the simplex found") {
    const Model model = Model::create(load_model_file(kFixtures + "/interval_row.json"));
    const auto& row = std::get<ConstraintRow>(model.row(0));
    const lp::LpSolution sol = lp::minimize_row(row, Vector{0.0, 0.0, 1.0});
    const Vector v = row_vertex(model, 0, sol.basis);
    CHECK(t::max_abs_diff(v, sol.vertex) <= 1e-12);
    CHECK_THROWS_AS(row_vertex(model, 0, Basis{{0}}), Error);
    CHECK_THROWS_AS(row_vertex(model, 0, VertexIndex{0}), Error);
}

TEST_CASE("property: attaining policies give row-stochastic matrices on mixed models") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + t::pick(rng, 5);
        const Model model = Model::create(t::random_mixed_data(rng, n));
        Vector f(n);
        for (double& v : f) v = 10.0 * t::uniform(rng) - 5.0;
        for (Bound b : {Bound::Lower, Bound::Upper}) {
            const Matrix m = policy_to_matrix(model, apply(model, f, b).policy);
            REQUIRE(stochastic_defect(m) <= 1e-12);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < n; ++c) CHECK(m(r, c) >= 0.0);
            }
        }
    }
}
