#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace imhit {

enum class ErrorKind {
    InvalidModel,
    Infeasible,
    SelectorOutOfRange,
    SingularSystem,
    ReachabilityViolation,
    MaxIterationsExceeded,
    TooManyCombinations,
    Unsupported,
};

std::string_view to_string(ErrorKind kind);

/// Base class for every domain error raised by the library. The kind lets
/// front ends map failures to exit codes without a catch per subclass.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace imhit
