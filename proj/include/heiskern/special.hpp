#pragma once

#include <complex>
#include <span>

#include "heiskern/quadrature.hpp"

namespace heiskern::special {

using numerics::Complex;
using numerics::QuadratureConfig;

enum class PsiEvalMode { series_combination, integral_representation, automatic };

/// Kummer's function 1F1(a; c; x) by its power series. Summation stops once
/// |term| <= 1e-17 |partial sum| for three consecutive terms.
Complex kummer_m(Complex a, Complex c, double x);

/// Gauss 2F1(a, b; c; x) by its power series; |x| < 1 unless a or b is a
/// non-positive integer.
double gauss_2f1(double a, double b, double c, double x);

/// Gamma(a) Psi(a, c; u) from the Laplace-type integral
///   int_0^inf exp(-a t - u / (e^t - 1)) (1 - e^-t)^-c dt,   Re(a) > 0, u > 0.
/// Throws Error{non_convergence} when either piece misses the tolerance.
Complex gamma_psi_product(Complex a, double c, double u, const QuadratureConfig& cfg);
numerics::QuadratureResult gamma_psi_product_result(Complex a, double c, double u,
                                                    const QuadratureConfig& cfg);

/// Tricomi's confluent hypergeometric function Psi(a, c; u) (Kummer U).
///
/// `series_combination` uses the two-Kummer-series formula
///   Gamma(1-c)/Gamma(a-c+1) M(a,c,u) + Gamma(c-1)/Gamma(a) u^(1-c) M(a-c+1,2-c,u);
/// the two terms cancel heavily for large u, so real parameters are summed
/// in 50-digit arithmetic. `integral_representation` divides
/// gamma_psi_product by Gamma(a). `automatic` takes the integral whenever c is
/// within 1e-6 of an integer.
Complex tricomi_psi(Complex a, double c, double u, PsiEvalMode mode, const QuadratureConfig& cfg);

/// Legendre function of the first kind on the cut, order <= 0:
///   (1/Gamma(1-order)) ((1+x)/(1-x))^(order/2) 2F1(-degree, degree+1; 1-order; (1-x)/2).
double legendre_p(double degree, double order, double x);

/// exp(-u/2) Psi(a, 2a; u) = pi^(-1/2) u^(1/2-a) K_(a-1/2)(u/2), a > 0, u > 0.
double scaled_psi_bessel(double a, double u);

struct FastPathCheck {
  double max_rel_deviation = 0.0;
  double worst_u = 0.0;
  int points = 0;
  bool passed = false;
};

/// Compares scaled_psi_bessel(a, u) pointwise with the integral route
/// exp(-u/2) gamma_psi_product(a, 2a, u) / Gamma(a) over `u_grid`.
FastPathCheck validate_bessel_fast_path(double a, std::span<const double> u_grid, double tolerance = 1e-10);

}  // namespace heiskern::special
