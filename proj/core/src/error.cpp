#include "berezin/error.hpp"

namespace berezin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadMatrix: return "BadMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DegenerateKernel: return "DegenerateKernel";
    case ErrorKind::InvalidPlan: return "InvalidPlan";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::FGProductMismatch: return "FGProductMismatch";
    case ErrorKind::UnknownChecker: return "UnknownChecker";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace berezin
