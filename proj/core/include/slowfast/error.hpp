#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slowfast {

enum class ErrorKind {
    NonAdmissibleHeight,
    NoConvergence,
    QuadratureFailure,
    DegenerateModel,
    BracketFailure,
    DegenerateGap,
    InsufficientScales,
    CompositionConstantTerm,
    NotInvertible,
    WrongShape,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace slowfast
