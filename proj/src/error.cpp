#include "heiskern/error.hpp"

namespace heiskern {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::pole: return "pole";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::domain: return "domain";
    case ErrorKind::non_finite_integrand: return "non-finite integrand";
    case ErrorKind::decay_hint_violated: return "decay hint violated";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::unsupported_representation: return "unsupported representation";
    case ErrorKind::resolution_budget: return "resolution budget";
    case ErrorKind::mode_mismatch: return "mode mismatch";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

}  // namespace heiskern
