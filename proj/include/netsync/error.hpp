#pragma once

#include <stdexcept>
#include <string>

namespace netsync {

enum class ErrorCode {
  invalid_size,
  symmetry_violation,
  not_laplacian,
  not_psd,
  dimension_mismatch,
  invalid_gain,
  invalid_argument,
  certificate_failed,
  not_converged,
  divergence,
  scenario,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable error category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netsync
