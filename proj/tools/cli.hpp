#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace imhit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 domain error (invalid model, reachability
/// failure, solver failure), 2 usage error (bad flags, missing files).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace imhit::cli
