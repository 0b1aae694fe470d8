#include "homforge/error.hpp"

namespace homforge {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::InvalidArity: return "InvalidArity";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::DissimilarStructures: return "DissimilarStructures";
    case ErrorCode::PartialMap: return "PartialMap";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidMinorMap: return "InvalidMinorMap";
    case ErrorCode::NotOnto: return "NotOnto";
    case ErrorCode::NotAGridSource: return "NotAGridSource";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::BadGridDimensions: return "BadGridDimensions";
    case ErrorCode::RelaxationWitnessMissing: return "RelaxationWitnessMissing";
    case ErrorCode::NoGridMinor: return "NoGridMinor";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace homforge
