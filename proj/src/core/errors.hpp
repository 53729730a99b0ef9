#pragma once

#include <stdexcept>
#include <string>

namespace blockdet {

enum class ErrorCode {
    DimensionMismatch,
    NotSquare,
    NotHermitian,
    NotPositiveDefinite,
    NegativeDiagonal,
    IndexOutOfRange,
    BlockGridMismatch,
    NonSquareBlocks,
    EmptyFactorList,
    DimensionTooLarge,
    DomainError,
    ParseError,
    ShapeMismatch,
    ConfigInvalid,
    NonFiniteEntry,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for the whole library; the code is what the C API
/// and the CLI map to status values and exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::DimensionMismatch:   return "DimensionMismatch";
    case ErrorCode::NotSquare:           return "NotSquare";
    case ErrorCode::NotHermitian:        return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NegativeDiagonal:    return "NegativeDiagonal";
    case ErrorCode::IndexOutOfRange:     return "IndexOutOfRange";
    case ErrorCode::BlockGridMismatch:   return "BlockGridMismatch";
    case ErrorCode::NonSquareBlocks:     return "NonSquareBlocks";
    case ErrorCode::EmptyFactorList:     return "EmptyFactorList";
    case ErrorCode::DimensionTooLarge:   return "DimensionTooLarge";
    case ErrorCode::DomainError:         return "DomainError";
    case ErrorCode::ParseError:          return "ParseError";
    case ErrorCode::ShapeMismatch:       return "ShapeMismatch";
    case ErrorCode::ConfigInvalid:       return "ConfigInvalid";
    case ErrorCode::NonFiniteEntry:      return "NonFiniteEntry";
    }
    return "UnknownError";
}

} // namespace blockdet
