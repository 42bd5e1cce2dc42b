#include "imhit/report_json.hpp"

#include <stdexcept>

namespace imhit {

using nlohmann::json;

json selector_to_json(const Selector& selector) {
    if (const auto* v = std::get_if<VertexIndex>(&selector)) return {{"vertex", v->index}};
    return {{"basis", std::get<Basis>(selector).columns}};
}

Selector selector_from_json(const json& doc) {
    if (doc.contains("vertex")) return VertexIndex{doc.at("vertex").get<std::size_t>()};
    return Basis{doc.at("basis").get<std::vector<std::size_t>>()};
}

json solve_report_to_json(const SolveReport& report, const std::vector<std::string>& labels,
                          bool include_wall_time) {
    json doc;
    doc["method"] = to_string(report.method);
    doc["bound"] = to_string(report.bound);
    doc["states"] = labels;
    doc["solution"] = report.solution;
    doc["iterations"] = report.iterations;
    doc["linear_solves"] = report.linear_solves;
    doc["residual"] = report.residual;
    doc["tolerance_limited"] = report.tolerance_limited;
    if (report.policy) {
        json sel = json::array();
        for (const auto& s : report.policy->selectors) sel.push_back(selector_to_json(s));
        doc["policy"] = std::move(sel);
    } else {
        doc["policy"] = nullptr;
    }
    if (!report.trace.empty()) {
        json trace = json::array();
        for (const auto& e : report.trace) {
            trace.push_back({{"iteration", e.iteration},
                             {"sup_norm", e.sup_norm},
                             {"policy_changes", e.policy_changes},
                             {"solution", e.solution}});
        }
        doc["trace"] = std::move(trace);
    }
    if (include_wall_time) doc["wall_time_s"] = report.wall_time;
    return doc;
}

SolveReport solve_report_from_json(const json& doc) {
    SolveReport report;
    const auto method = doc.at("method").get<std::string>();
    if (method == "policy") report.method = Method::Policy;
    else if (method == "value") report.method = Method::Value;
    else if (method == "brute") report.method = Method::Brute;
    else throw std::invalid_argument("unknown method '" + method + "'");
    const auto bound = doc.at("bound").get<std::string>();
    if (bound != "lower" && bound != "upper") throw std::invalid_argument("unknown bound '" + bound + "'");
    report.bound = bound == "lower" ? Bound::Lower : Bound::Upper;

    report.solution = doc.at("solution").get<Vector>();
    report.iterations = doc.at("iterations").get<unsigned>();
    report.linear_solves = doc.at("linear_solves").get<unsigned>();
    report.residual = doc.at("residual").get<double>();
    report.tolerance_limited = doc.at("tolerance_limited").get<bool>();
    if (!doc.at("policy").is_null()) {
        Policy policy;
        for (const auto& s : doc.at("policy")) policy.selectors.push_back(selector_from_json(s));
        report.policy = std::move(policy);
    }
    if (doc.contains("trace")) {
        for (const auto& e : doc.at("trace")) {
            report.trace.push_back({e.at("iteration").get<unsigned>(), e.at("sup_norm").get<double>(),
                                    e.at("policy_changes").get<std::size_t>(), e.at("solution").get<Vector>()});
        }
    }
    if (doc.contains("wall_time_s")) report.wall_time = doc.at("wall_time_s").get<double>();
    return report;
}

json reachability_to_json(const ReachabilityReport& report, const std::vector<std::string>& labels) {
    json steps = json::array();
    for (const auto& s : report.reach_step) {
        if (s) steps.push_back(*s);
        else steps.push_back(nullptr);
    }
    json violating = json::array();
    for (std::size_t x : report.violating) violating.push_back(labels.at(x));
    return {{"holds", report.holds},
            {"rounds", report.rounds},
            {"states", labels},
            {"reach_step", std::move(steps)},
            {"violating", std::move(violating)}};
}

json validation_to_json(const ValidationReport& report) {
    json issues = json::array();
    for (const auto& i : report.issues) {
        json entry = {{"code", to_string(i.code)}, {"message", i.message}};
        entry["state"] = i.state ? json(*i.state) : json(nullptr);
        entry["vertex"] = i.vertex ? json(*i.vertex) : json(nullptr);
        issues.push_back(std::move(entry));
    }
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"state", r.state},
                        {"form", r.vertex_form ? "vertices" : "constraints"},
                        {"entries", r.entries},
                        {"ok", r.ok}});
    }
    return {{"accepted", report.accepted()}, {"issues", std::move(issues)}, {"rows", std::move(rows)}};
}

} // namespace imhit
