#pragma once

#include "imhit/model.hpp"
#include "imhit/reachability.hpp"
#include "imhit/solvers.hpp"

#include <json.hpp>

namespace imhit {

/// SolveReport document:
///
///   {"method": "policy"|"value"|"brute", "bound": "lower"|"upper",
///    "states": [label, ...], "solution": [h(x), ...],
///    "iterations": n, "linear_solves": k, "residual": r,
///    "tolerance_limited": bool,
///    "policy": null | [{"vertex": k} | {"basis": [c, ...]}, ...],
///    "trace": [{"iteration": n, "sup_norm": s, "policy_changes": c, "solution": [...]}, ...],
///    "wall_time_s": t}
///
/// "trace" is present only when the report carries one; "wall_time_s" only
/// when requested. Doubles are written in shortest round-trip form, so
/// parsing recovers them bit for bit.
nlohmann::json solve_report_to_json(const SolveReport& report, const std::vector<std::string>& labels,
                                    bool include_wall_time = true);
SolveReport solve_report_from_json(const nlohmann::json& doc);

/// {"holds": bool, "rounds": k, "states": [...], "reach_step": [n | null, ...],
///  "violating": [label, ...]}
nlohmann::json reachability_to_json(const ReachabilityReport& report, const std::vector<std::string>& labels);

/// {"accepted": bool,
///  "issues": [{"code": "...", "state": i | null, "vertex": k | null, "message": "..."}],
///  "rows": [{"state": i, "form": "vertices"|"constraints", "entries": k, "ok": bool}]}
nlohmann::json validation_to_json(const ValidationReport& report);

nlohmann::json selector_to_json(const Selector& selector);
Selector selector_from_json(const nlohmann::json& doc);

} // namespace imhit
