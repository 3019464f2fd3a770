#include "flatsig/errors.hpp"

namespace flatsig {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AmbiguousTrace: return "AmbiguousTrace";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::RefinementUnstable: return "RefinementUnstable";
    case ErrorCode::NonIntegerCocycle: return "NonIntegerCocycle";
    case ErrorCode::EllipticBoundary: return "EllipticBoundary";
    case ErrorCode::NonCentralProduct: return "NonCentralProduct";
    case ErrorCode::IntegralityFailure: return "IntegralityFailure";
    case ErrorCode::UnsupportedSurface: return "UnsupportedSurface";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::HolonomyMismatch: return "HolonomyMismatch";
    case ErrorCode::NonStandardIndex: return "NonStandardIndex";
    case ErrorCode::UnachievableValue: return "UnachievableValue";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::PlanIncomplete: return "PlanIncomplete";
    case ErrorCode::OutOfFamilyRange: return "OutOfFamilyRange";
    case ErrorCode::RealificationUnsupported: return "RealificationUnsupported";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace flatsig
