#include "navier_norms/errors.hpp"

namespace navier_norms {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kOk: return "Ok";
        case ErrorCode::kInvalidArgument: return "InvalidArgument";
        case ErrorCode::kOutOfRange: return "OutOfRange";
        case ErrorCode::kDegenerate: return "Degenerate";
        case ErrorCode::kNoBranch: return "NoBranch";
        case ErrorCode::kPole: return "Pole";
        case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorCode::kUndefinedArithmetic: return "UndefinedArithmetic";
        case ErrorCode::kNonIntegrable: return "NonIntegrable";
        case ErrorCode::kExponentInadmissible: return "ExponentInadmissible";
        case ErrorCode::kHypothesisFailed: return "HypothesisFailed";
        case ErrorCode::kNoConvergence: return "NoConvergence";
        case ErrorCode::kGridMismatch: return "GridMismatch";
        case ErrorCode::kMissingSamples: return "MissingSamples";
        case ErrorCode::kNonFinite: return "NonFinite";
        case ErrorCode::kSingularityAtEndpoint: return "SingularityAtEndpoint";
        case ErrorCode::kBranchDisagreement: return "BranchDisagreement";
        case ErrorCode::kParse: return "Parse";
        case ErrorCode::kIo: return "Io";
    }
    return "Unknown";
}

}  // namespace navier_norms
