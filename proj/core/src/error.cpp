#include "specgraph/error.hpp"

namespace specgraph {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OutOfRangeProbability: return "OutOfRangeProbability";
    case ErrorCode::MalformedMembership: return "MalformedMembership";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadLevel: return "BadLevel";
    case ErrorCode::NonpositiveGap: return "NonpositiveGap";
    case ErrorCode::NoGapCertificate: return "NoGapCertificate";
    case ErrorCode::DuplicateCenters: return "DuplicateCenters";
    case ErrorCode::TooManyLabelsForExact: return "TooManyLabelsForExact";
    case ErrorCode::NonpositiveMargin: return "NonpositiveMargin";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::DegenerateTopEigenvalue: return "DegenerateTopEigenvalue";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::InsufficientTolerance: return "InsufficientTolerance";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::NoTiePresent: return "NoTiePresent";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace specgraph
