#pragma once

#include <stdexcept>
#include <string>

namespace namo {

enum class ErrorCode {
    kInvalidGeometry,
    kResolutionTooCoarse,
    kOutOfBounds,
    kEmptyPath,
    kOverlappingInput,
    kPlacementFailed,
    kUnknownObject,
    kSamplingExhausted,
    kInvalidEndpoints,
    kIoError,
    kParseError,
    kSchemaVersionMismatch,
    kReplayMismatch,
};

/// Library-wide error with a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::kInvalidGeometry: return "INVALID_GEOMETRY";
        case ErrorCode::kResolutionTooCoarse: return "RESOLUTION_TOO_COARSE";
        case ErrorCode::kOutOfBounds: return "OUT_OF_BOUNDS";
        case ErrorCode::kEmptyPath: return "EMPTY_PATH";
        case ErrorCode::kOverlappingInput: return "OVERLAPPING_INPUT";
        case ErrorCode::kPlacementFailed: return "PLACEMENT_FAILED";
        case ErrorCode::kUnknownObject: return "UNKNOWN_OBJECT";
        case ErrorCode::kSamplingExhausted: return "SAMPLING_EXHAUSTED";
        case ErrorCode::kInvalidEndpoints: return "INVALID_ENDPOINTS";
        case ErrorCode::kIoError: return "IO_ERROR";
        case ErrorCode::kParseError: return "PARSE_ERROR";
        case ErrorCode::kSchemaVersionMismatch: return "SCHEMA_VERSION_MISMATCH";
        case ErrorCode::kReplayMismatch: return "REPLAY_MISMATCH";
    }
    return "UNKNOWN";
}

}  // namespace namo
