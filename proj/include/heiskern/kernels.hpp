#pragma once

#include <optional>

#include "heiskern/heisenberg.hpp"
#include "heiskern/quadrature.hpp"

namespace heiskern::kernels {

using heisenberg::HeisenbergPoint;
using numerics::Complex;
using numerics::QuadratureConfig;
using numerics::QuadratureResult;

/// How exp(-u/2) Psi(n/2, n; u) is evaluated inside the x-integral.
/// `bessel` uses the modified-Bessel closed form once it has been checked
/// against the integral route on a u grid (per n, once per process), and
/// falls back to `nested` otherwise.
enum class InnerMethod { bessel, nested };

struct KernelQuery {
  int n = 1;
  HeisenbergPoint p = HeisenbergPoint::identity(1);
  std::optional<HeisenbergPoint> q;  // identity when absent
  std::optional<Complex> zeta;       // resolvent only, Re(zeta) < 0
  QuadratureConfig cfg;
};

/// c_n = 2^n Gamma(n/2)^2 / pi^(n+1)
double folland_constant(int n);

/// c_n (|z|^4 + tau^2)^(-n/2); throws Error{singularity} at the identity.
double folland_closed(const HeisenbergPoint& p, int n);

/// (2^(n+1) Gamma(n/2) / pi^(n+1)) int_0^inf x^(n-1) e^(-x|z|^2) Psi(n/2, n; 2x|z|^2) cos(tau x) dx.
/// Throws Error{unsupported_representation} at z = 0 and
/// Error{resolution_budget} when |tau| / |z|^2 > 1e4.
QuadratureResult folland_integral(const HeisenbergPoint& p, int n, const QuadratureConfig& cfg,
                                  InnerMethod inner = InnerMethod::bessel);

/// Green kernel R_0(p, q) from the same x-integral with |z - w|^2 and theta.
QuadratureResult green_r0(const HeisenbergPoint& p, const HeisenbergPoint& q, int n, const QuadratureConfig& cfg,
                          InnerMethod inner = InnerMethod::bessel);

/// 2^(n-1) Gamma(n/2)^2 / pi^(n+1/2) ((mu/2)^2 + theta^2)^(-n/2); throws
/// Error{singularity} when p = q.
double green_r0_closed(const HeisenbergPoint& p, const HeisenbergPoint& q, int n);

/// Resolvent kernel
///   -(2^n / pi^(n+1/2)) int_0^inf x^(n-1) Gamma(a) Psi(a, n; 2x d) e^(-x d) cos(x theta) dx,
/// a = n/2 - zeta/(2x), d = |z - w|^2, with Gamma(a) Psi evaluated as one
/// integral. Accuracy is only targeted for real zeta or |Im zeta| <= |Re zeta|.
QuadratureResult resolvent(const KernelQuery& query);

/// True when the Bessel fast path has passed its grid validation for this n.
bool bessel_fast_path_validated(int n);

}  // namespace heiskern::kernels
