#include "heiskern/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "heiskern/error.hpp"

namespace heiskern::numerics {
namespace {

// Lanczos-type rational approximation, g = 671/128 with 14 terms; relative
// error below 2e-14 for Re(a) >= 1/2 (checked against a 30-digit reference).
constexpr double kLanczosShift = 5.24218750000000000;
constexpr double kLanczosLead = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrtTwoPi = 2.5066282746310005;

// Largest argument with a finite Gamma value.
constexpr double kGammaMaxArg = 171.62437695630271;

double sinpi(double x) {
  double r = x - 2.0 * std::round(0.5 * x);
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

Complex sinpi(Complex x) {
  const double shift = 2.0 * std::round(0.5 * x.real());
  return std::sin(std::numbers::pi * (x - shift));
}

template <class T>
T lanczos_series(T a) {
  T sum = kLanczosLead;
  T y = a;
  for (double c : kLanczos) {
    y += 1.0;
    sum += c / y;
  }
  return sum;
}

// Gamma(a) for Re(a) >= 1/2. The power t^(a+1/2) is split in two halves so it
// does not overflow before e^-t scales it down.
double gamma_right(double a) {
  const double t = a + kLanczosShift;
  const double half = std::pow(t, 0.5 * (a + 0.5));
  return kSqrtTwoPi * lanczos_series(a) / a * half * (half * std::exp(-t));
}

Complex gamma_right(Complex a) {
  const Complex t = a + kLanczosShift;
  const Complex half = std::exp(0.5 * (a + 0.5) * std::log(t));
  return kSqrtTwoPi * lanczos_series(a) / a * half * (half * std::exp(-t));
}

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

bool is_gamma_pole(Complex a) noexcept {
  return a.imag() == 0.0 && a.real() <= 0.0 && a.real() == std::floor(a.real());
}

double gamma(double a) {
  if (std::isnan(a)) throw Error(ErrorKind::domain, "gamma of NaN");
  if (is_gamma_pole(a)) throw Error(ErrorKind::pole, "gamma pole at " + std::to_string(a));
  if (a > kGammaMaxArg) throw Error(ErrorKind::overflow, "gamma(" + std::to_string(a) + ")");
  if (a >= 0.5) return gamma_right(a);
  if (1.0 - a > kGammaMaxArg) return 0.0 * sinpi(a);
  const double v = std::numbers::pi / (sinpi(a) * gamma_right(1.0 - a));
  if (!std::isfinite(v)) throw Error(ErrorKind::overflow, "gamma(" + std::to_string(a) + ")");
  return v;
}

Complex gamma(Complex a) {
  if (a.imag() == 0.0) return gamma(a.real());
  if (!finite(a)) throw Error(ErrorKind::domain, "gamma of non-finite argument");
  const Complex v = a.real() >= 0.5 ? gamma_right(a)
                                    : std::numbers::pi / (sinpi(a) * gamma_right(1.0 - a));
  if (!finite(v)) throw Error(ErrorKind::overflow, "complex gamma out of range");
  return v;
}

double rgamma(double a) {
  if (is_gamma_pole(a)) return 0.0;
  if (a > kGammaMaxArg) return 0.0;
  if (a >= 0.5) return 1.0 / gamma_right(a);
  if (1.0 - a > kGammaMaxArg) throw Error(ErrorKind::overflow, "rgamma(" + std::to_string(a) + ")");
  return sinpi(a) * gamma_right(1.0 - a) / std::numbers::pi;
}

Complex rgamma(Complex a) {
  if (a.imag() == 0.0) return rgamma(a.real());
  const Complex v = a.real() >= 0.5 ? 1.0 / gamma_right(a)
                                    : sinpi(a) * gamma_right(1.0 - a) / std::numbers::pi;
  if (!finite(v)) throw Error(ErrorKind::overflow, "complex rgamma out of range");
  return v;
}

}  // namespace heiskern::numerics
