#pragma once

#include "imhit/model.hpp"

#include <optional>

namespace imhit {

/// Threshold below which a lower probability counts as zero.
inline constexpr double kReachEpsilon = 1e-12;

struct ReachabilityReport {
    bool holds = false;
    /// 0 for target states, the absorbing round for states that reach A
    /// with positive lower probability, empty otherwise.
    std::vector<std::optional<unsigned>> reach_step;
    /// States outside A that never get absorbed, ascending.
    std::vector<std::size_t> violating;
    unsigned rounds = 0;
};

/// Grows B_0 = A by B_{k+1} = B_k u {x : [lower 1_{B_k}](x) > eps} until it
/// stops changing. The condition holds iff the fixed point is every state.
ReachabilityReport check_reachability(const Model& model);

} // namespace imhit
