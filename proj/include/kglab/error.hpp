#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kglab {

enum class ErrorCode {
    InvalidArgument,
    InvalidPartition,
    NotTotal,
    CapExceeded,
    Infeasible,
    OutOfProvenRange,
    NotPrime,
    PreconditionViolated,
    Parse,
};

std::string_view to_string(ErrorCode code);

class LabError : public std::runtime_error {
public:
    LabError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::InvalidPartition: return "INVALID_PARTITION";
        case ErrorCode::NotTotal: return "NOT_TOTAL";
        case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
        case ErrorCode::Infeasible: return "INFEASIBLE";
        case ErrorCode::OutOfProvenRange: return "OUT_OF_PROVEN_RANGE";
        case ErrorCode::NotPrime: return "NOT_PRIME";
        case ErrorCode::PreconditionViolated: return "PRECONDITION_VIOLATED";
        case ErrorCode::Parse: return "PARSE";
    }
    return "UNKNOWN";
}

}  // namespace kglab
