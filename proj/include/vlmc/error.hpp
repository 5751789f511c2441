#pragma once

#include <stdexcept>
#include <string>

namespace vlmc {

enum class ErrorKind {
    // tree description and user input
    Parse,
    NotSaturated,
    NotPrefixFree,
    BadProbability,
    DanglingBranch,
    InsufficientHistory,
    MissingParameter,
    BadParams,
    UnsupportedTree,
    // solvers and analytic objects
    NoStationaryMeasure,
    SeriesUndecided,
    HeightTooLarge,
    NonUnique,
    UnresolvedInternal,
    ZeroMassTree,
    UnresolvedPoint,
    UnresolvedRegion,
    LimitUndefined,
    Undefined,
    DivergentAt,
    PoleAt,
    SingularSystem,
    InternalNodeWord,
    UnclassifiableWord,
    OutOfRange,
    StateSpaceTooLarge,
    InsufficientSuffix,
    HistoryExhausted,
    DiracState,
    DivisionByZero,
    Io,
};

const char* kind_name(ErrorKind k);

/// CLI exit code: 1 for malformed input, 2 for numeric or convergence failures, 3 for I/O.
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace vlmc
