#pragma once

#include <stdexcept>
#include <string>

namespace qpm {

// Stable machine-readable error kinds, mirrored into CLI JSON error output.
enum class ErrorKind {
    NotHermitian,
    NotUnitTrace,
    NotPositive,
    NotIdempotent,
    NotOrthonormal,
    NotRankOne,
    DimensionMismatch,
    NonRealTrace,
    ZeroProbabilityBranch,
    DegenerateOverlap,
    ReconstructionNotPhysical,
    WitnessNotFound,
    BoundViolation,
    InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotUnitTrace: return "NotUnitTrace";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::NotIdempotent: return "NotIdempotent";
        case ErrorKind::NotOrthonormal: return "NotOrthonormal";
        case ErrorKind::NotRankOne: return "NotRankOne";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonRealTrace: return "NonRealTrace";
        case ErrorKind::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
        case ErrorKind::DegenerateOverlap: return "DegenerateOverlap";
        case ErrorKind::ReconstructionNotPhysical: return "ReconstructionNotPhysical";
        case ErrorKind::WitnessNotFound: return "WitnessNotFound";
        case ErrorKind::BoundViolation: return "BoundViolation";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message, double magnitude = 0.0)
        : std::runtime_error(std::move(message)), kind_(kind), magnitude_(magnitude) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Measured size of the violated invariant (0 when not applicable).
    double magnitude() const noexcept { return magnitude_; }

  private:
    ErrorKind kind_;
    double magnitude_;
};

}  // namespace qpm
