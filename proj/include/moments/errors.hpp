#pragma once

#include <stdexcept>
#include <string>

namespace moments {

// Error categories used across the library. The CLI maps them to exit codes:
// usage-type errors -> 2, non-convergence -> 3.
enum class ErrorCode {
    NonSquare,
    NonFiniteEntry,
    NotHermitian,
    NotNormal,
    NonRealSpectrum,
    NoConvergence,
    InvalidK,
    EmptyInput,
    TooManyAtoms,
    ResolutionTooHigh,
    DimensionMismatch,
    InvalidState,
    NotHermitianM,
    ParseError,
    UnknownSuite,
    IoError,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotNormal: return "NotNormal";
        case ErrorCode::NonRealSpectrum: return "NonRealSpectrum";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::InvalidK: return "InvalidK";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::TooManyAtoms: return "TooManyAtoms";
        case ErrorCode::ResolutionTooHigh: return "ResolutionTooHigh";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::NotHermitianM: return "NotHermitianM";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace moments
