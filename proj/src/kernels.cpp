#include "heiskern/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "heiskern/error.hpp"
#include "heiskern/gamma.hpp"
#include "heiskern/special.hpp"

namespace heiskern::kernels {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResolutionLimit = 1e4;

void require_dimension(int n, const HeisenbergPoint& p) {
  if (n < 1) throw Error(ErrorKind::precondition, "n must be >= 1");
  if (p.dimension() != n)
    throw Error(ErrorKind::dimension_mismatch,
                "point has dimension " + std::to_string(p.dimension()) + ", expected " + std::to_string(n));
}

double z_distance2(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  double d = 0.0;
  for (std::size_t j = 0; j < p.z().size(); ++j) d += std::norm(p.z()[j] - q.z()[j]);
  return d;
}

void require_representable(double d2, double theta) {
  if (!(d2 > 0.0))
    throw Error(ErrorKind::unsupported_representation, "integral representation needs z != w");
  if (std::abs(theta) / d2 > kResolutionLimit)
    throw Error(ErrorKind::resolution_budget,
                "|theta| / |z-w|^2 = " + std::to_string(std::abs(theta) / d2) + " exceeds 1e4");
}

QuadratureConfig outer_config(const QuadratureConfig& cfg, double theta) {
  QuadratureConfig c = cfg;
  if (theta != 0.0) c.oscillation_period = 2.0 * kPi / std::abs(theta);
  return c;
}

// int_0^inf x^(n-1) e^(-x d2) Psi(n/2, n; 2 x d2) cos(theta x) dx
QuadratureResult psi_cosine_transform(int n, double d2, double theta, const QuadratureConfig& cfg,
                                      InnerMethod inner) {
  cfg.validate();
  require_representable(d2, theta);
  const double a = 0.5 * n;
  const bool fast = inner == InnerMethod::bessel && bessel_fast_path_validated(n);

  QuadratureConfig inner_cfg;
  inner_cfg.abs_tol = 1e-300;
  inner_cfg.rel_tol = std::min(1e-12, 0.01 * cfg.rel_tol);

  numerics::RealIntegrand f = [=](double x) {
    if (x <= 0.0) return 0.0;
    const double u = 2.0 * x * d2;
    double scaled = 0.0;
    if (fast) {
      scaled = special::scaled_psi_bessel(a, u);
    } else {
      const Complex psi = special::tricomi_psi(a, static_cast<double>(n), u, special::PsiEvalMode::automatic, inner_cfg);
      scaled = std::exp(-0.5 * u) * psi.real();
    }
    return std::pow(x, n - 1) * scaled * std::cos(theta * x);
  };

  numerics::TailEnvelope env;
  env.decay_rate = d2;
  env.power = a - 1.0;
  env.scale = 2.0 * std::pow(2.0 * d2, -a);
  return numerics::integrate_semi_infinite(f, outer_config(cfg, theta), env);
}

QuadratureResult scaled(QuadratureResult r, double factor) {
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

double geometry_theta(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  return heisenberg::pair_geometry(p, q).theta;
}

}  // namespace

bool bessel_fast_path_validated(int n) {
  static std::mutex mutex;
  static std::map<int, bool> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(1e-4 * std::pow(6e6, k / 40.0));
  const bool ok = special::validate_bessel_fast_path(0.5 * n, grid).passed;
  std::lock_guard lock(mutex);
  cache.emplace(n, ok);
  return ok;
}

double folland_constant(int n) {
  if (n < 1) throw Error(ErrorKind::precondition, "n must be >= 1");
  const double g = numerics::gamma(0.5 * n);
  return std::pow(2.0, n) * g * g / std::pow(kPi, n + 1);
}

double folland_closed(const HeisenbergPoint& p, int n) {
  require_dimension(n, p);
  const double g4 = heisenberg::koranyi_gauge4(p);
  if (g4 == 0.0) throw Error(ErrorKind::singularity, "fundamental solution is singular at the identity");
  return folland_constant(n) * std::pow(g4, -0.5 * n);
}

QuadratureResult folland_integral(const HeisenbergPoint& p, int n, const QuadratureConfig& cfg, InnerMethod inner) {
  require_dimension(n, p);
  const double pref = std::pow(2.0, n + 1) * numerics::gamma(0.5 * n) / std::pow(kPi, n + 1);
  return scaled(psi_cosine_transform(n, p.z_norm2(), p.tau(), cfg, inner), pref);
}

QuadratureResult green_r0(const HeisenbergPoint& p, const HeisenbergPoint& q, int n, const QuadratureConfig& cfg,
                          InnerMethod inner) {
  require_dimension(n, p);
  require_dimension(n, q);
  const double pref = std::pow(2.0, n) * numerics::gamma(0.5 * n) / std::pow(kPi, n + 0.5);
  return scaled(psi_cosine_transform(n, z_distance2(p, q), geometry_theta(p, q), cfg, inner), pref);
}

double green_r0_closed(const HeisenbergPoint& p, const HeisenbergPoint& q, int n) {
  require_dimension(n, p);
  require_dimension(n, q);
  const auto g = heisenberg::pair_geometry(p, q);
  const double half_mu = 0.5 * g.mu;
  const double base = half_mu * half_mu + g.theta * g.theta;
  if (base == 0.0) throw Error(ErrorKind::singularity, "Green kernel is singular at p = q");
  const double gm = numerics::gamma(0.5 * n);
  return std::pow(2.0, n - 1) * gm * gm / std::pow(kPi, n + 0.5) * std::pow(base, -0.5 * n);
}

QuadratureResult resolvent(const KernelQuery& query) {
  const int n = query.n;
  require_dimension(n, query.p);
  const HeisenbergPoint q = query.q.value_or(HeisenbergPoint::identity(n));
  require_dimension(n, q);
  if (!query.zeta) throw Error(ErrorKind::precondition, "resolvent needs zeta");
  const Complex zeta = *query.zeta;
  if (!(zeta.real() < 0.0) || !std::isfinite(zeta.imag()))
    throw Error(ErrorKind::precondition, "resolvent needs Re(zeta) < 0");
  query.cfg.validate();

  const double d2 = z_distance2(query.p, q);
  const double theta = geometry_theta(query.p, q);
  require_representable(d2, theta);

  QuadratureConfig inner_cfg;
  inner_cfg.abs_tol = 1e-300;
  inner_cfg.rel_tol = std::min(1e-12, 0.01 * query.cfg.rel_tol);
  const bool real_zeta = zeta.imag() == 0.0;

  numerics::ComplexIntegrand f = [=](double x) -> Complex {
    if (x <= 0.0) return {0.0, 0.0};
    const Complex a = 0.5 * n - zeta / (2.0 * x);
    const double u = 2.0 * x * d2;
    Complex gp;
    try {
      gp = special::gamma_psi_product(a, static_cast<double>(n), u, inner_cfg);
    } catch (const Error& e) {
      throw Error(e.kind(), "resolvent inner integral at x=" + std::to_string(x) + ": " + e.what());
    }
    if (real_zeta) gp = {gp.real(), 0.0};
    return std::pow(x, n - 1) * gp * std::exp(-x * d2) * std::cos(theta * x);
  };

  numerics::TailEnvelope env;
  env.decay_rate = d2;
  env.power = 0.5 * n - 1.0;
  env.scale = 4.0 * numerics::gamma(0.5 * n) * std::pow(2.0 * d2, -0.5 * n);
  const QuadratureResult r = numerics::integrate_semi_infinite_complex(f, outer_config(query.cfg, theta), env);
  return scaled(r, -std::pow(2.0, n) / std::pow(kPi, n + 0.5));
}

}  // namespace heiskern::kernels
