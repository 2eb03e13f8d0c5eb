#include "dgm/error.hpp"

namespace dgm {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NumericalFault: return "NumericalFault";
    case ErrorKind::UnsupportedIntegral: return "UnsupportedIntegral";
    case ErrorKind::DegenerateGradient: return "DegenerateGradient";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SingularStep: return "SingularStep";
    case ErrorKind::ReferenceUnresolved: return "ReferenceUnresolved";
  }
  return "Unknown";
}

}  // namespace dgm
