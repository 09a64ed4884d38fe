#pragma once

#include <stdexcept>
#include <string>

namespace navier_norms {

// Stable numeric values; mirrored one-to-one by nn_status in the C API.
enum class ErrorCode : int {
    kOk = 0,
    kInvalidArgument = 1,
    kOutOfRange = 2,
    kDegenerate = 3,
    kNoBranch = 4,
    kPole = 5,
    kAlphaOutOfRange = 6,
    kUndefinedArithmetic = 7,
    kNonIntegrable = 8,
    kExponentInadmissible = 9,
    kHypothesisFailed = 10,
    kNoConvergence = 11,
    kGridMismatch = 12,
    kMissingSamples = 13,
    kNonFinite = 14,
    kSingularityAtEndpoint = 15,
    kBranchDisagreement = 16,
    kParse = 17,
    kIo = 18,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace navier_norms
