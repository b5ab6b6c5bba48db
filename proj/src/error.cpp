#include "crl/error.hpp"

namespace crl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::IndexError: return "IndexError";
    case ErrorKind::AmbiguousStructure: return "AmbiguousStructure";
    case ErrorKind::NotHypersurface: return "NotHypersurface";
    case ErrorKind::NotHook: return "NotHook";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::OutOfTable: return "OutOfTable";
    case ErrorKind::NotHypersurfaceCase: return "NotHypersurfaceCase";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::CertificationFailure: return "CertificationFailure";
    case ErrorKind::DegenerateKernel: return "DegenerateKernel";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::FactorizationMismatch: return "FactorizationMismatch";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotCritical: return "NotCritical";
    case ErrorKind::NoCriticalPointFound: return "NoCriticalPointFound";
    case ErrorKind::NotConormal: return "NotConormal";
    case ErrorKind::NotOnDual: return "NotOnDual";
    case ErrorKind::SubgenericRank: return "SubgenericRank";
    case ErrorKind::DegeneratePencil: return "DegeneratePencil";
    case ErrorKind::AmbiguousBoundary: return "AmbiguousBoundary";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace crl
