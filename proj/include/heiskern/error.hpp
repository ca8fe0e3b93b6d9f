#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heiskern {

/// Failure taxonomy shared by every module. Budget exhaustion in the
/// quadrature engines is not an error: it is reported through
/// QuadratureResult::converged.
enum class ErrorKind {
  pole,
  overflow,
  domain,
  non_finite_integrand,
  decay_hint_violated,
  non_convergence,
  dimension_mismatch,
  singularity,
  unsupported_representation,
  resolution_budget,
  mode_mismatch,
  precondition,
  usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace heiskern
