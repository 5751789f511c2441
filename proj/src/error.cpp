#include "vlmc/error.hpp"

namespace vlmc {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::NotPrefixFree: return "NotPrefixFree";
    case ErrorKind::BadProbability: return "BadProbability";
    case ErrorKind::DanglingBranch: return "DanglingBranch";
    case ErrorKind::InsufficientHistory: return "InsufficientHistory";
    case ErrorKind::MissingParameter: return "MissingParameter";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::UnsupportedTree: return "UnsupportedTree";
    case ErrorKind::NoStationaryMeasure: return "NoStationaryMeasure";
    case ErrorKind::SeriesUndecided: return "SeriesUndecided";
    case ErrorKind::HeightTooLarge: return "HeightTooLarge";
    case ErrorKind::NonUnique: return "NonUnique";
    case ErrorKind::UnresolvedInternal: return "UnresolvedInternal";
    case ErrorKind::ZeroMassTree: return "ZeroMassTree";
    case ErrorKind::UnresolvedPoint: return "UnresolvedPoint";
    case ErrorKind::UnresolvedRegion: return "UnresolvedRegion";
    case ErrorKind::LimitUndefined: return "LimitUndefined";
    case ErrorKind::Undefined: return "Undefined";
    case ErrorKind::DivergentAt: return "DivergentAt";
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InternalNodeWord: return "InternalNodeWord";
    case ErrorKind::UnclassifiableWord: return "UnclassifiableWord";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorKind::InsufficientSuffix: return "InsufficientSuffix";
    case ErrorKind::HistoryExhausted: return "HistoryExhausted";
    case ErrorKind::DiracState: return "DiracState";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::NotSaturated:
    case ErrorKind::NotPrefixFree:
    case ErrorKind::BadProbability:
    case ErrorKind::DanglingBranch:
    case ErrorKind::MissingParameter:
    case ErrorKind::BadParams:
    case ErrorKind::UnsupportedTree:
        return 1;
    case ErrorKind::Io:
        return 3;
    default:
        return 2;
    }
}

} // namespace vlmc
