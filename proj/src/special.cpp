#include "heiskern/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "heiskern/error.hpp"
#include "heiskern/gamma.hpp"

namespace heiskern::special {
namespace {

using numerics::QuadratureResult;
using numerics::TailEnvelope;
using Big = boost::multiprecision::cpp_bin_float_50;

constexpr double kSeriesStop = 1e-17;
constexpr int kMaxTerms = 100000;

bool near_integer(double c, double tol) { return std::abs(c - std::round(c)) < tol; }

// Shared term recursion t_{j+1} = t_j (a+j)(b+j) x / ((c+j)(j+1)); `b_active`
// drops the b factor for 1F1.
template <class T, class Real>
T hypergeometric_series(T a, T b, bool b_active, T c, Real x, Real stop, const char* name) {
  T term = T(1);
  T sum = T(1);
  int quiet = 0;
  for (int j = 0; j < kMaxTerms; ++j) {
    T factor = (a + Real(j)) * x / ((c + Real(j)) * Real(j + 1));
    if (b_active) factor *= (b + Real(j));
    term *= factor;
    sum += term;
    using std::abs;
    if (abs(term) <= stop * abs(sum)) {
      if (++quiet == 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw Error(ErrorKind::non_convergence, std::string(name) + " series did not converge in 1e5 terms");
}

Big rgamma_big(const Big& x) {
  if (x <= 0 && x == floor(x)) return Big(0);
  return 1 / boost::math::tgamma(x);
}

Big kummer_big(const Big& a, const Big& c, const Big& x) {
  return hypergeometric_series<Big, Big>(a, Big(0), false, c, x, Big("1e-45"), "1F1");
}

Complex psi_series_real(double a_in, double c_in, double u_in) {
  const Big a(a_in), c(c_in), u(u_in);
  const Big one(1);
  const Big first = boost::math::tgamma(one - c) * rgamma_big(a - c + one) * kummer_big(a, c, u);
  const Big second = boost::math::tgamma(c - one) * rgamma_big(a) * pow(u, one - c) *
                     kummer_big(a - c + one, Big(2) - c, u);
  return {static_cast<double>(first + second), 0.0};
}

Complex psi_series_complex(Complex a, double c, double u) {
  const Complex first = numerics::gamma(1.0 - c) * numerics::rgamma(a - c + 1.0) * kummer_m(a, c, u);
  const Complex second = numerics::gamma(c - 1.0) * numerics::rgamma(a) * std::pow(u, 1.0 - c) *
                         kummer_m(a - c + 1.0, Complex(2.0 - c), u);
  return first + second;
}

}  // namespace

Complex kummer_m(Complex a, Complex c, double x) {
  if (numerics::is_gamma_pole(c)) throw Error(ErrorKind::pole, "1F1 with c a non-positive integer");
  if (!(std::abs(x) <= 700.0)) throw Error(ErrorKind::domain, "1F1 argument outside |x| <= 700");
  return hypergeometric_series<Complex, double>(a, Complex(0.0), false, c, x, kSeriesStop, "1F1");
}

double gauss_2f1(double a, double b, double c, double x) {
  if (numerics::is_gamma_pole(c)) throw Error(ErrorKind::pole, "2F1 with c a non-positive integer");
  const bool terminating = numerics::is_gamma_pole(a) || numerics::is_gamma_pole(b);
  if (!std::isfinite(x)) throw Error(ErrorKind::domain, "2F1 argument is not finite");
  if (!terminating && std::abs(x) >= 1.0)
    throw Error(ErrorKind::non_convergence, "2F1 series diverges for |x| >= 1");
  return hypergeometric_series<double, double>(a, b, true, c, x, kSeriesStop, "2F1");
}

QuadratureResult gamma_psi_product_result(Complex a, double c, double u, const QuadratureConfig& cfg) {
  cfg.validate();
  const double re_a = a.real();
  if (!(re_a > 0.0) || !std::isfinite(std::abs(a)))
    throw Error(ErrorKind::precondition, "gamma_psi_product needs Re(a) > 0");
  if (!(u > 0.0) || !std::isfinite(u)) throw Error(ErrorKind::precondition, "gamma_psi_product needs u > 0");
  if (!std::isfinite(c)) throw Error(ErrorKind::precondition, "gamma_psi_product needs finite c");

  const numerics::ComplexIntegrand integrand = [a, c, u](double t) {
    const double log_weight = -u / std::expm1(t) - c * std::log(-std::expm1(-t));
    return std::exp(-a * t + log_weight);
  };

  // Magnitude probe over a geometric t grid: |f(t)| t approximates the
  // contribution of the octave around t.
  double magnitude = 0.0;
  long probes = 0;
  for (int k = -44; k <= 8; ++k) {
    const double t = std::ldexp(1.0, k);
    magnitude = std::max(magnitude, std::abs(integrand(t)) * t);
    ++probes;
  }

  // Peak of exp(-Re(a) t - u/t) t^-c, the small-t model of the integrand.
  const double peak = c >= 0.0 ? 2.0 * u / (c + std::sqrt(c * c + 4.0 * re_a * u))
                               : (-c + std::sqrt(c * c + 4.0 * re_a * u)) / (2.0 * re_a);
  std::vector<double> head_breaks{0.0};
  for (double scale : {1.0 / 16.0, 0.25, 1.0, 4.0, 16.0}) {
    const double t = peak * scale;
    if (t > head_breaks.back() * 1.01 && t < 0.99) head_breaks.push_back(t);
  }
  head_breaks.push_back(1.0);
  const QuadratureResult head = numerics::integrate_breakpoints(integrand, head_breaks, cfg);

  QuadratureConfig tail_cfg = cfg;
  if (magnitude > 0.0) tail_cfg.tail_epsilon = std::min(cfg.tail_epsilon, 1e-3 * cfg.rel_tol * magnitude);
  tail_cfg.oscillation_period.reset();
  if (a.imag() != 0.0) tail_cfg.oscillation_period = 2.0 * std::numbers::pi / std::abs(a.imag());
  // For t >= 1: exp(-u/(e^t-1)) <= 1 and (1-e^-t)^-c <= max(1, (1-e^-1)^-c).
  const double envelope_scale = c > 0.0 ? std::pow(-std::expm1(-1.0), -c) : 1.0;
  const QuadratureResult tail =
      numerics::integrate_semi_infinite_complex(integrand, tail_cfg, TailEnvelope{re_a, 0.0, envelope_scale}, 1.0);

  QuadratureResult out;
  out.value = head.value + tail.value;
  out.error_estimate = head.error_estimate + tail.error_estimate;
  out.evaluations = head.evaluations + tail.evaluations + probes;
  out.converged = (head.converged && tail.converged) || out.error_estimate <= cfg.target(std::abs(out.value));
  return out;
}

Complex gamma_psi_product(Complex a, double c, double u, const QuadratureConfig& cfg) {
  const QuadratureResult r = gamma_psi_product_result(a, c, u, cfg);
  if (!r.converged)
    throw Error(ErrorKind::non_convergence,
                "Gamma(a)Psi(a,c;u) integral at a=(" + std::to_string(a.real()) + "," + std::to_string(a.imag()) +
                    "), c=" + std::to_string(c) + ", u=" + std::to_string(u) +
                    ", error estimate " + std::to_string(r.error_estimate));
  return r.value;
}

Complex tricomi_psi(Complex a, double c, double u, PsiEvalMode mode, const QuadratureConfig& cfg) {
  if (!(u > 0.0) || !std::isfinite(u)) throw Error(ErrorKind::precondition, "tricomi_psi needs u > 0");
  if (mode == PsiEvalMode::automatic)
    mode = near_integer(c, 1e-6) ? PsiEvalMode::integral_representation : PsiEvalMode::series_combination;

  if (mode == PsiEvalMode::integral_representation) {
    if (!(a.real() > 0.0)) throw Error(ErrorKind::mode_mismatch, "integral representation needs Re(a) > 0");
    return gamma_psi_product(a, c, u, cfg) * numerics::rgamma(a);
  }

  if (near_integer(c, 1e-6))
    throw Error(ErrorKind::mode_mismatch, "series combination is singular for c within 1e-6 of an integer");
  if (!(a.real() > 0.0)) throw Error(ErrorKind::mode_mismatch, "series combination needs Re(a) > 0");
  if (u > 700.0) throw Error(ErrorKind::domain, "series combination limited to u <= 700");
  if (a.imag() == 0.0) return psi_series_real(a.real(), c, u);
  return psi_series_complex(a, c, u);
}

double legendre_p(double degree, double order, double x) {
  if (!(order <= 0.0)) throw Error(ErrorKind::precondition, "legendre_p implemented for order <= 0");
  if (!(std::abs(x) < 1.0)) throw Error(ErrorKind::domain, "legendre_p needs |x| < 1");
  const double prefactor = numerics::rgamma(1.0 - order) * std::pow((1.0 + x) / (1.0 - x), 0.5 * order);
  return prefactor * gauss_2f1(-degree, degree + 1.0, 1.0 - order, 0.5 * (1.0 - x));
}

double scaled_psi_bessel(double a, double u) {
  if (!(a > 0.0) || !(u > 0.0)) throw Error(ErrorKind::precondition, "scaled_psi_bessel needs a > 0, u > 0");
  const double order = std::abs(a - 0.5);
  return std::cyl_bessel_k(order, 0.5 * u) * std::pow(u, 0.5 - a) / std::sqrt(std::numbers::pi);
}

FastPathCheck validate_bessel_fast_path(double a, std::span<const double> u_grid, double tolerance) {
  QuadratureConfig tight;
  tight.abs_tol = 1e-300;
  tight.rel_tol = 1e-13;
  FastPathCheck check;
  const double inv_gamma = numerics::rgamma(a);
  for (double u : u_grid) {
    const double reference = std::exp(-0.5 * u) * gamma_psi_product(a, 2.0 * a, u, tight).real() * inv_gamma;
    const double fast = scaled_psi_bessel(a, u);
    const double dev = std::abs(fast - reference) / std::abs(reference);
    if (dev > check.max_rel_deviation || check.points == 0) {
      check.max_rel_deviation = std::max(dev, check.max_rel_deviation);
      check.worst_u = u;
    }
    ++check.points;
  }
  check.passed = check.points > 0 && check.max_rel_deviation <= tolerance;
  return check;
}

}  // namespace heiskern::special
