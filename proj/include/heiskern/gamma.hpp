#pragma once

#include <complex>

namespace heiskern::numerics {

using Complex = std::complex<double>;

// Lanczos-type approximation (g = 671/128, 14 terms) with reflection for
// Re(a) < 1/2. Throws Error{pole} at non-positive integers and
// Error{overflow} when the result leaves the double range.
double gamma(double a);
Complex gamma(Complex a);

// 1/Gamma(a); entire, so it returns exactly zero at the poles of Gamma.
double rgamma(double a);
Complex rgamma(Complex a);

/// True when a lies on the real axis at a non-positive integer.
bool is_gamma_pole(Complex a) noexcept;

}  // namespace heiskern::numerics
