#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace heiskern::heisenberg {

using Complex = std::complex<double>;

/// A point (z, tau) of H^n = C^n x R.
class HeisenbergPoint {
 public:
  HeisenbergPoint(std::vector<Complex> z, double tau);

  static HeisenbergPoint identity(int n);

  int dimension() const { return static_cast<int>(z_.size()); }
  const std::vector<Complex>& z() const { return z_; }
  double tau() const { return tau_; }

  /// |z|^2
  double z_norm2() const;
  bool is_identity() const;

  /// Real coordinates (x_1, y_1, ..., x_n, y_n, tau).
  std::vector<double> coordinates() const;
  static HeisenbergPoint from_coordinates(std::span<const double> coords);

  friend bool operator==(const HeisenbergPoint&, const HeisenbergPoint&) = default;

 private:
  std::vector<Complex> z_;
  double tau_;
};

/// mu = 2|z - w|^2, theta = (tau - s) + 2 Im<z, w>.
struct PairGeometry {
  double mu = 0.0;
  double theta = 0.0;
};

/// <z, w> = sum_j z_j conj(w_j)
Complex hermitian_product(std::span<const Complex> z, std::span<const Complex> w);

/// Group law (z, tau).(w, s) = (z + w, tau + s + 2 Im<z, w>).
HeisenbergPoint multiply(const HeisenbergPoint& p, const HeisenbergPoint& q);
HeisenbergPoint inverse(const HeisenbergPoint& p);

/// |z|^4 + tau^2, the fourth power of the Koranyi gauge.
double koranyi_gauge4(const HeisenbergPoint& p);

PairGeometry pair_geometry(const HeisenbergPoint& p, const HeisenbergPoint& q);

/// Second partials of a test function. Vectors are indexed by j = 0..n-1;
/// xt and yt are the mixed partials with tau.
struct SecondPartials {
  std::vector<double> xx, yy, xy, xt, yt;
  double tt = 0.0;
};

/// Smooth test function on H^n with exact derivatives. `grad` returns the
/// partials in coordinate order (x_1, y_1, ..., x_n, y_n, tau). Beyond
/// `support_radius` (sup norm of the real coordinates) the value and the
/// listed derivatives are below 1e-16. Callables must be safe to invoke
/// concurrently.
struct TestFunction {
  std::function<double(const HeisenbergPoint&)> value;
  std::function<std::vector<double>(const HeisenbergPoint&)> grad;
  std::function<SecondPartials(const HeisenbergPoint&)> hess;
  double support_radius = 0.0;
};

/// Sub-Laplacian applied through exact real partials:
///   sum_j [ -(phi_xx + phi_yy)/4 - |z_j|^2 phi_tt + x_j phi_yt - y_j phi_xt ].
double apply_sublaplacian(const TestFunction& phi, const HeisenbergPoint& p);

struct DerivativeConsistency {
  double max_rel_deviation = 0.0;
  bool consistent = false;
};

/// Central-difference audit of `grad` against `value` and of `hess` against
/// `grad`, including symmetry of the mixed partials.
DerivativeConsistency check_derivative_consistency(const TestFunction& phi,
                                                   std::span<const HeisenbergPoint> points,
                                                   double rel_tol = 1e-5);

/// "re:im" (or a bare "re").
Complex parse_complex(std::string_view text);
/// Semicolon-separated complex literals, e.g. "1:0;0:1".
std::vector<Complex> parse_z(std::string_view text);

}  // namespace heiskern::heisenberg
