#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homforge {

enum class ErrorCode {
    UnknownSymbol,
    DuplicateSymbol,
    InvalidArity,
    ArityMismatch,
    UnknownElement,
    DuplicateElement,
    DissimilarStructures,
    PartialMap,
    InvalidDimension,
    InvalidDecomposition,
    MalformedTree,
    TooLarge,
    InvalidMinorMap,
    NotOnto,
    NotAGridSource,
    NotConnected,
    BadGridDimensions,
    RelaxationWitnessMissing,
    NoGridMinor,
    BudgetExceeded,
    LoopEdge,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every domain failure is reported as an Error carrying one of the codes
// above; the CLI prints the code name verbatim.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string & what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace homforge
