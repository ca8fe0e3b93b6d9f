#pragma once

#include <complex>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace heiskern::verify {

using Complex = std::complex<double>;
using Parameters = std::vector<std::pair<std::string, std::string>>;

struct VerificationReport {
  std::string identity_id;
  Parameters parameters;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  /// abs_residual <= tolerance or rel_residual <= tolerance
  bool recompute_pass() const;
};

/// Fills residuals (rel = abs / max(|lhs|, |rhs|)) and the pass flag.
VerificationReport make_report(std::string identity_id, Parameters parameters, Complex lhs, Complex rhs,
                               double tolerance);

/// Shortest-safe round-trip form: 17 significant digits.
std::string format_number(double v);

/// "k1=v1;k2=v2"
std::string format_parameters(const Parameters& p);

/// Header: identity_id,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tolerance,pass
void write_csv(std::ostream& os, std::span<const VerificationReport> reports);

/// One "key: value" block per report, blank-line separated.
void write_text(std::ostream& os, std::span<const VerificationReport> reports);

}  // namespace heiskern::verify
