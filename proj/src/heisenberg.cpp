#include "heiskern/heisenberg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "heiskern/error.hpp"

namespace heiskern::heisenberg {
namespace {

void require_same_dimension(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  if (p.dimension() != q.dimension())
    throw Error(ErrorKind::dimension_mismatch,
                "points of dimension " + std::to_string(p.dimension()) + " and " + std::to_string(q.dimension()));
}

double parse_real(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v))
    throw Error(ErrorKind::usage, "cannot parse number '" + std::string(text) + "'");
  return v;
}

}  // namespace

HeisenbergPoint::HeisenbergPoint(std::vector<Complex> z, double tau) : z_(std::move(z)), tau_(tau) {
  if (z_.empty()) throw Error(ErrorKind::precondition, "Heisenberg dimension must be >= 1");
  if (!std::isfinite(tau_)) throw Error(ErrorKind::precondition, "non-finite tau");
  for (const Complex& c : z_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::precondition, "non-finite z coordinate");
}

HeisenbergPoint HeisenbergPoint::identity(int n) {
  if (n < 1) throw Error(ErrorKind::precondition, "Heisenberg dimension must be >= 1");
  return HeisenbergPoint(std::vector<Complex>(static_cast<std::size_t>(n)), 0.0);
}

double HeisenbergPoint::z_norm2() const {
  double s = 0.0;
  for (const Complex& c : z_) s += std::norm(c);
  return s;
}

bool HeisenbergPoint::is_identity() const {
  return tau_ == 0.0 && std::all_of(z_.begin(), z_.end(), [](Complex c) { return c == Complex{}; });
}

std::vector<double> HeisenbergPoint::coordinates() const {
  std::vector<double> out;
  out.reserve(2 * z_.size() + 1);
  for (const Complex& c : z_) {
    out.push_back(c.real());
    out.push_back(c.imag());
  }
  out.push_back(tau_);
  return out;
}

HeisenbergPoint HeisenbergPoint::from_coordinates(std::span<const double> coords) {
  if (coords.size() < 3 || coords.size() % 2 == 0)
    throw Error(ErrorKind::dimension_mismatch, "expected 2n+1 real coordinates");
  std::vector<Complex> z(coords.size() / 2);
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = {coords[2 * j], coords[2 * j + 1]};
  return HeisenbergPoint(std::move(z), coords.back());
}

Complex hermitian_product(std::span<const Complex> z, std::span<const Complex> w) {
  Complex s{0.0, 0.0};
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

HeisenbergPoint multiply(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  require_same_dimension(p, q);
  std::vector<Complex> z(p.z().size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = p.z()[j] + q.z()[j];
  const double twist = 2.0 * hermitian_product(p.z(), q.z()).imag();
  return HeisenbergPoint(std::move(z), p.tau() + q.tau() + twist);
}

HeisenbergPoint inverse(const HeisenbergPoint& p) {
  std::vector<Complex> z(p.z().size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = -p.z()[j];
  return HeisenbergPoint(std::move(z), -p.tau());
}

double koranyi_gauge4(const HeisenbergPoint& p) {
  const double r2 = p.z_norm2();
  return r2 * r2 + p.tau() * p.tau();
}

PairGeometry pair_geometry(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  require_same_dimension(p, q);
  double d2 = 0.0;
  for (std::size_t j = 0; j < p.z().size(); ++j) d2 += std::norm(p.z()[j] - q.z()[j]);
  return {2.0 * d2, (p.tau() - q.tau()) + 2.0 * hermitian_product(p.z(), q.z()).imag()};
}

double apply_sublaplacian(const TestFunction& phi, const HeisenbergPoint& p) {
  const SecondPartials h = phi.hess(p);
  double out = 0.0;
  for (std::size_t j = 0; j < p.z().size(); ++j) {
    const double x = p.z()[j].real();
    const double y = p.z()[j].imag();
    out += -0.25 * (h.xx[j] + h.yy[j]) - (x * x + y * y) * h.tt + (x * h.yt[j] - y * h.xt[j]);
  }
  return out;
}

DerivativeConsistency check_derivative_consistency(const TestFunction& phi,
                                                   std::span<const HeisenbergPoint> points, double rel_tol) {
  DerivativeConsistency out;
  const double h = 1e-5;
  auto deviation = [](double fd, double exact, double scale) { return std::abs(fd - exact) / scale; };

  for (const HeisenbergPoint& p : points) {
    const std::vector<double> base = p.coordinates();
    const std::size_t dim = base.size();
    auto shifted = [&](std::size_t i, double step) {
      std::vector<double> c = base;
      c[i] += step;
      return HeisenbergPoint::from_coordinates(c);
    };
    const std::vector<double> grad = phi.grad(p);
    const SecondPartials hess = phi.hess(p);

    // Entries between different j are not carried by SecondPartials.
    auto hess_entry = [&](std::size_t i, std::size_t k, double& v) {
      if (i > k) std::swap(i, k);
      const std::size_t t = dim - 1;
      if (i == t && k == t) return (v = hess.tt, true);
      if (k == t) return (v = (i % 2 == 0 ? hess.xt[i / 2] : hess.yt[i / 2]), true);
      if (i / 2 != k / 2) return false;
      const std::size_t j = i / 2;
      if (i == k) return (v = (i % 2 == 0 ? hess.xx[j] : hess.yy[j]), true);
      return (v = hess.xy[j], true);
    };

    double grad_scale = 1e-3;
    for (double g : grad) grad_scale = std::max(grad_scale, std::abs(g));
    double hess_scale = 1e-3;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) {
        double v = 0.0;
        if (hess_entry(i, k, v)) hess_scale = std::max(hess_scale, std::abs(v));
      }

    for (std::size_t i = 0; i < dim; ++i) {
      const double fd = (phi.value(shifted(i, h)) - phi.value(shifted(i, -h))) / (2.0 * h);
      out.max_rel_deviation = std::max(out.max_rel_deviation, deviation(fd, grad[i], grad_scale));
      const std::vector<double> gp = phi.grad(shifted(i, h));
      const std::vector<double> gm = phi.grad(shifted(i, -h));
      for (std::size_t k = 0; k < dim; ++k) {
        double exact = 0.0;
        if (!hess_entry(i, k, exact)) continue;
        const double fd2 = (gp[k] - gm[k]) / (2.0 * h);
        out.max_rel_deviation = std::max(out.max_rel_deviation, deviation(fd2, exact, hess_scale));
      }
    }
  }
  out.consistent = out.max_rel_deviation <= rel_tol;
  return out;
}

Complex parse_complex(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {parse_real(text), 0.0};
  return {parse_real(text.substr(0, colon)), parse_real(text.substr(colon + 1))};
}

std::vector<Complex> parse_z(std::string_view text) {
  std::vector<Complex> out;
  while (true) {
    const auto semi = text.find(';');
    out.push_back(parse_complex(text.substr(0, semi)));
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return out;
}

}  // namespace heiskern::heisenberg
