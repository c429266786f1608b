#pragma once

#include <stdexcept>
#include <string>

namespace hpcx {

enum class ErrorKind {
    ClosureViolation,
    DuplicateSimplex,
    NonOrientable,
    DimensionMismatch,
    DegreeMismatch,
    SizeLimitExceeded,
    Axiom2Violation,
    SpectralGapFailure,
    PairInvariantViolation,
    EmptyBoundary,
    ParameterOutOfRange,
    InvertibilityFailure,
    MarkerCoverageError,
    ConditionViolation,
    ConstraintViolation,
    RestrictionMismatch,
    MatchingFailure,
    NotFree,
    NotSimplicial,
    NotEquivariant,
    CharacterTableInconsistent,
    Unclassifiable,
    InputError,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ClosureViolation: return "ClosureViolation";
        case ErrorKind::DuplicateSimplex: return "DuplicateSimplex";
        case ErrorKind::NonOrientable: return "NonOrientable";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
        case ErrorKind::Axiom2Violation: return "Axiom2Violation";
        case ErrorKind::SpectralGapFailure: return "SpectralGapFailure";
        case ErrorKind::PairInvariantViolation: return "PairInvariantViolation";
        case ErrorKind::EmptyBoundary: return "EmptyBoundary";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::InvertibilityFailure: return "InvertibilityFailure";
        case ErrorKind::MarkerCoverageError: return "MarkerCoverageError";
        case ErrorKind::ConditionViolation: return "ConditionViolation";
        case ErrorKind::ConstraintViolation: return "ConstraintViolation";
        case ErrorKind::RestrictionMismatch: return "RestrictionMismatch";
        case ErrorKind::MatchingFailure: return "MatchingFailure";
        case ErrorKind::NotFree: return "NotFree";
        case ErrorKind::NotSimplicial: return "NotSimplicial";
        case ErrorKind::NotEquivariant: return "NotEquivariant";
        case ErrorKind::CharacterTableInconsistent: return "CharacterTableInconsistent";
        case ErrorKind::Unclassifiable: return "Unclassifiable";
        case ErrorKind::InputError: return "InputError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace hpcx
