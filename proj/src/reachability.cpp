#include "imhit/reachability.hpp"
#include "imhit/operator.hpp"

namespace imhit {

ReachabilityReport check_reachability(const Model& model) {
    const std::size_t n = model.size();
    ReachabilityReport report;
    report.reach_step.assign(n, std::nullopt);

    Vector absorbed = model.target_indicator();
    std::size_t count = model.target().size();
    for (std::size_t t : model.target()) report.reach_step[t] = 0;

    for (unsigned round = 1; count < n; ++round) {
        const Vector lower = lower_apply(model, absorbed).value;
        std::size_t added = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (!report.reach_step[x] && lower[x] > kReachEpsilon) {
                report.reach_step[x] = round;
                ++added;
            }
        }
        if (added == 0) break;
        report.rounds = round;
        count += added;
        for (std::size_t x = 0; x < n; ++x) absorbed[x] = report.reach_step[x] ? 1.0 : 0.0;
    }

    for (std::size_t x = 0; x < n; ++x) {
        if (!report.reach_step[x]) report.violating.push_back(x);
    }
    report.holds = report.violating.empty();
    return report;
}

} // namespace imhit
