#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>

namespace heiskern::numerics {

using Complex = std::complex<double>;
using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<Complex(double)>;

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  // Bound on the neglected [X_cut, inf) tail of semi-infinite integrals.
  double tail_epsilon = 1e-12;
  // Panel width hint for oscillatory integrands; panels are aligned to half periods.
  std::optional<double> oscillation_period;

  /// Throws Error{precondition} on non-positive tolerances or budget.
  void validate() const;
  double target(double magnitude) const;
};

struct QuadratureResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;

  double real() const { return value.real(); }
};

/// How integrable endpoint singularities are treated on finite ranges.
///
/// `automatic` first runs plain bisection and, when that exhausts the
/// budget, retries with x = a + u^2 / x = b - u^2 at both ends.
enum class EndpointTreatment { automatic, none, sqrt_lower, sqrt_upper, sqrt_both };

/// Globally adaptive Gauss-Kronrod (10/21-point) integration over [a, b].
/// Panels are kept in an error-ranked heap and the worst one is bisected
/// until the total error meets cfg.target(|value|) or the subdivision budget
/// is spent (converged = false, best value returned). Throws
/// Error{non_finite_integrand} when a sample is NaN or infinite.
QuadratureResult integrate_adaptive(const RealIntegrand& f, double a, double b,
                                    const QuadratureConfig& cfg,
                                    EndpointTreatment endpoints = EndpointTreatment::automatic);
QuadratureResult integrate_adaptive_complex(const ComplexIntegrand& f, double a, double b,
                                            const QuadratureConfig& cfg,
                                            EndpointTreatment endpoints = EndpointTreatment::automatic);

/// Same engine with caller-supplied interior breakpoints (strictly increasing,
/// first and last element are the integration limits).
QuadratureResult integrate_breakpoints(const ComplexIntegrand& f, std::span<const double> breaks,
                                       const QuadratureConfig& cfg,
                                       EndpointTreatment endpoints = EndpointTreatment::automatic);

/// Envelope |f(x)| <= scale * max(x, 1)^power * exp(-decay_rate * x) for large x.
/// A scale of zero asks the engine to estimate it from probe samples.
struct TailEnvelope {
  double decay_rate = 1.0;
  double power = 0.0;
  double scale = 0.0;
};

/// Truncation point X with scale * X^power * exp(-rate X) / rate <= tail_epsilon,
/// from two fixed-point iterations of X = (p ln X - ln(eps rate / C)) / rate.
double truncation_point(const TailEnvelope& env, double tail_epsilon, double lower = 0.0);

/// Integral over [lower, inf) truncated at truncation_point(). With
/// cfg.oscillation_period set, panel boundaries sit on half periods so the
/// alternating contributions cancel panel by panel. Throws
/// Error{decay_hint_violated} when samples in the far half of the range
/// exceed the envelope by more than 10x.
QuadratureResult integrate_semi_infinite_complex(const ComplexIntegrand& f, const QuadratureConfig& cfg,
                                                 const TailEnvelope& env, double lower = 0.0);
QuadratureResult integrate_semi_infinite(const RealIntegrand& f, const QuadratureConfig& cfg,
                                         double decay_rate);
QuadratureResult integrate_semi_infinite(const RealIntegrand& f, const QuadratureConfig& cfg,
                                         const TailEnvelope& env, double lower = 0.0);

}  // namespace heiskern::numerics
