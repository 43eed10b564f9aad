#include "netsync/error.hpp"

namespace netsync {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_size: return "invalid-size";
    case ErrorCode::symmetry_violation: return "symmetry-violation";
    case ErrorCode::not_laplacian: return "not-laplacian";
    case ErrorCode::not_psd: return "not-psd";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::invalid_gain: return "invalid-gain";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::certificate_failed: return "certificate-failed";
    case ErrorCode::not_converged: return "not-converged";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::scenario: return "scenario";
  }
  return "unknown";
}

}  // namespace netsync
