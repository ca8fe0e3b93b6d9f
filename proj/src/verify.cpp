#include "heiskern/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "heiskern/error.hpp"
#include "heiskern/gamma.hpp"
#include "heiskern/kernels.hpp"
#include "heiskern/parallel.hpp"
#include "heiskern/special.hpp"
#include "heiskern/test_functions.hpp"

namespace heiskern::verify {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGoldenResolvent = -0.117807091871325394;

using numerics::gamma;

std::string num(double v) { return format_number(v); }

std::string format_z(const HeisenbergPoint& p) {
  std::string out;
  for (const auto& c : p.z()) {
    if (!out.empty()) out += ';';
    out += num(c.real()) + ':' + num(c.imag());
  }
  return out;
}

numerics::QuadratureResult require_converged(numerics::QuadratureResult r, const char* what) {
  if (!r.converged)
    throw Error(ErrorKind::non_convergence, std::string(what) + ": quadrature budget exhausted");
  return r;
}

HeisenbergPoint axis_point(int n, double zmag, double tau) {
  std::vector<Complex> z(static_cast<std::size_t>(n));
  z[0] = zmag;
  return HeisenbergPoint(z, tau);
}

}  // namespace

VerificationReport check_laplace_cosine(double nu, double alpha, double theta, const QuadratureConfig& cfg) {
  if (!(nu > 0.0) || !(alpha > 0.0) || !std::isfinite(theta))
    throw Error(ErrorKind::precondition, "laplace_cosine needs nu > 0, alpha > 0");
  QuadratureConfig c = cfg;
  if (theta != 0.0) c.oscillation_period = 2.0 * kPi / std::abs(theta);
  numerics::TailEnvelope env{alpha, nu - 1.0, 1.0};
  auto f = [=](double x) { return x > 0.0 ? std::pow(x, nu - 1.0) * std::exp(-alpha * x) * std::cos(theta * x) : 0.0; };
  const double lhs = require_converged(numerics::integrate_semi_infinite(f, c, env), "laplace_cosine").real();
  const double rhs =
      gamma(nu) * std::pow(alpha * alpha + theta * theta, -0.5 * nu) * std::cos(nu * std::atan2(theta, alpha));
  return make_report("laplace_cosine", {{"nu", num(nu)}, {"alpha", num(alpha)}, {"theta", num(theta)}}, lhs, rhs,
                     1e-8);
}

VerificationReport check_t_integral_form(int n, double mu, double theta, const QuadratureConfig& cfg) {
  if (n < 1 || !(mu > 0.0) || !std::isfinite(theta))
    throw Error(ErrorKind::precondition, "t_integral_form needs n >= 1, mu > 0");
  const double h = 0.5 * mu;
  // (1 - e^-t) (mu/2) coth(t/2) = (mu/2)(1 + e^-t) keeps the t -> 0 end finite.
  auto f = [=](double t) {
    const double e = std::exp(-t);
    const double one_minus = -std::expm1(-t);
    const double re = h * (1.0 + e);
    const double im = theta * one_minus;
    return std::exp(-0.5 * n * t) * std::pow(re * re + im * im, -0.5 * n) * std::cos(n * std::atan2(im, re));
  };
  const double far = std::pow(h * h + theta * theta, -0.5 * n);
  numerics::TailEnvelope env{0.5 * n, 0.0, 2.0 * std::max(far, std::pow(mu, -n))};
  const double integral = require_converged(numerics::integrate_semi_infinite(f, cfg, env), "t_integral_form").real();
  const double lhs = std::pow(2.0, n) * gamma(static_cast<double>(n)) / std::pow(kPi, n + 0.5) * integral;
  const double g = gamma(0.5 * n);
  const double rhs = std::pow(2.0, n - 1) * g * g / std::pow(kPi, n + 0.5) * far;
  return make_report("t_integral_form", {{"n", std::to_string(n)}, {"mu", num(mu)}, {"theta", num(theta)}}, lhs, rhs,
                     1e-7);
}

VerificationReport check_arc_identity(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorKind::precondition, "arc identity needs beta > 0");
  const long double b = beta;
  const double lhs = static_cast<double>(std::acos((1.0L - b) / (1.0L + b)));
  const double rhs = 2.0 * std::atan(std::sqrt(beta));
  return make_report("arc_identity", {{"beta", num(beta)}}, lhs, rhs, 1e-13);
}

VerificationReport check_cos_power_legendre(double nu, double a, double eps, const QuadratureConfig& cfg) {
  if (!(nu > -0.5) || !(a > 0.0) || !(eps > 0.0 && eps < kPi))
    throw Error(ErrorKind::precondition, "cos_power_legendre needs nu > -1/2, a > 0, 0 < eps < pi");
  const double p = nu - 0.5;
  auto f = [=](double x) {
    const double base = 2.0 * std::sin(0.5 * (eps + x)) * std::sin(0.5 * (eps - x));
    return base > 0.0 ? std::pow(base, p) * std::cos(a * x) : 0.0;
  };
  const auto ends = nu < 0.5 ? numerics::EndpointTreatment::sqrt_upper : numerics::EndpointTreatment::automatic;
  const double lhs =
      require_converged(numerics::integrate_adaptive(f, 0.0, eps, cfg, ends), "cos_power_legendre").real();
  const double rhs = std::sqrt(0.5 * kPi) * std::pow(std::sin(eps), nu) * gamma(nu + 0.5) *
                     special::legendre_p(a - 0.5, -nu, std::cos(eps));
  return make_report("cos_power_legendre", {{"nu", num(nu)}, {"a", num(a)}, {"eps", num(eps)}}, lhs, rhs, 1e-7);
}

VerificationReport check_gegenbauer(double sigma, double eps) {
  if (!(sigma > 0.0) || !(eps > 0.0 && eps < kPi))
    throw Error(ErrorKind::precondition, "gegenbauer needs sigma > 0, 0 < eps < pi");
  const double lhs = special::legendre_p(sigma, -sigma, std::cos(eps));
  const double rhs = std::pow(0.5 * std::sin(eps), sigma) * numerics::rgamma(1.0 + sigma);
  return make_report("gegenbauer", {{"sigma", num(sigma)}, {"eps", num(eps)}}, lhs, rhs, 1e-10);
}

VerificationReport check_duplication(double xi) {
  if (!(xi > 0.0)) throw Error(ErrorKind::precondition, "duplication needs xi > 0");
  const double lhs = gamma(xi) * gamma(xi + 0.5);
  const double rhs = std::pow(2.0, 1.0 - 2.0 * xi) * std::sqrt(kPi) * gamma(2.0 * xi);
  return make_report("duplication", {{"xi", num(xi)}}, lhs, rhs, 1e-12);
}

std::vector<VerificationReport> check_integral_vs_closed(int n, const HeisenbergPoint& p,
                                                         const QuadratureConfig& cfg) {
  const double closed = kernels::folland_closed(p, n);
  const auto integral = kernels::folland_integral(p, n, cfg);
  const auto green = kernels::green_r0(p, HeisenbergPoint::identity(n), n, cfg);
  Parameters base = {{"n", std::to_string(n)}, {"z", format_z(p)}, {"tau", num(p.tau())}};

  Parameters first = base;
  first.emplace_back("integral", num(integral.real()));
  first.emplace_back("closed", num(closed));
  first.emplace_back("error_estimate", num(integral.error_estimate));
  first.emplace_back("converged", integral.converged ? "true" : "false");
  const double tol = std::max(1e-6, 10.0 * integral.error_estimate / closed);

  Parameters second = base;
  second.emplace_back("green_r0", num(green.real()));
  second.emplace_back("closed", num(closed));
  second.emplace_back("error_estimate", num(green.error_estimate));

  return {make_report("integral_vs_closed", std::move(first), integral.real() / closed, 1.0, tol),
          make_report("green_ratio", std::move(second), green.real() / closed, std::sqrt(kPi) / 2.0, 1e-6)};
}

std::vector<VerificationReport> check_resolvent_limit(int n, const HeisenbergPoint& p, const HeisenbergPoint& q,
                                                      int k_max, const QuadratureConfig& cfg) {
  if (k_max < 2) throw Error(ErrorKind::precondition, "resolvent limit needs k_max >= 2");
  const double r0 = kernels::green_r0_closed(p, q, n);
  std::vector<VerificationReport> rows;
  double previous = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    kernels::KernelQuery query;
    query.n = n;
    query.p = p;
    query.q = q;
    query.zeta = Complex(-std::pow(10.0, -k), 0.0);
    query.cfg = cfg;
    const auto r = kernels::resolvent(query);
    const double tol = k == k_max ? std::min(previous, 1e-3) : previous;
    Parameters params = {{"n", std::to_string(n)},         {"z", format_z(p)},
                         {"tau", num(p.tau())},           {"w", format_z(q)},
                         {"s", num(q.tau())},             {"k", std::to_string(k)},
                         {"zeta", num(query.zeta->real())}, {"resolvent", num(r.value.real())},
                         {"green_r0", num(r0)},           {"converged", r.converged ? "true" : "false"}};
    rows.push_back(make_report("resolvent_limit", std::move(params), -r.value / r0, 1.0, tol));
    previous = rows.back().abs_residual;
  }
  return rows;
}

VerificationReport check_distributional(const TestFunction& phi, const QuadratureConfig& cfg,
                                        double exclusion_radius, double box_radius) {
  const auto origin = HeisenbergPoint::identity(1);
  if (phi.grad(origin).size() != 3)
    throw Error(ErrorKind::dimension_mismatch, "distributional check is implemented for n = 1");
  if (!(exclusion_radius > 0.0 && exclusion_radius <= 0.05))
    throw Error(ErrorKind::precondition, "exclusion radius must lie in (0, 0.05]");
  if (!(box_radius >= phi.support_radius))
    throw Error(ErrorKind::precondition, "box radius must cover the test function's support radius");
  cfg.validate();

  const double eps = exclusion_radius;
  const double eps2 = eps * eps;
  const double R = box_radius;
  const double c1 = kernels::folland_constant(1);

  QuadratureConfig level = cfg;
  level.abs_tol = std::max(cfg.abs_tol, 1e-10);
  level.rel_tol = std::max(cfg.rel_tol, 1e-8);
  level.oscillation_period.reset();
  const auto plain = numerics::EndpointTreatment::none;

  auto lap = [&](double r, double alpha, double tau) {
    return heisenberg::apply_sublaplacian(phi, HeisenbergPoint({std::polar(r, alpha)}, tau));
  };
  auto s_integral = [&](double r, double alpha) {
    const double r2 = r * r;
    const double S = std::asinh(R / r2);
    auto g = [&](double s) { return lap(r, alpha, r2 * std::sinh(s)); };
    if (r2 >= eps2) return require_converged(numerics::integrate_adaptive(g, -S, S, level, plain), "cubature").real();
    const double s0 = std::acosh(eps2 / r2);
    if (s0 >= S) return 0.0;
    return require_converged(numerics::integrate_adaptive(g, s0, S, level, plain), "cubature").real() +
           require_converged(numerics::integrate_adaptive(g, -S, -s0, level, plain), "cubature").real();
  };
  auto r_integral = [&](double alpha) {
    auto h = [&](double r) { return r > 0.0 ? r * s_integral(r, alpha) : 0.0; };
    const double inner = require_converged(numerics::integrate_adaptive(h, 0.0, eps, level), "cubature").real();
    const double outer = require_converged(numerics::integrate_adaptive(h, eps, R, level, plain), "cubature").real();
    return inner + outer;
  };
  const auto total = require_converged(numerics::integrate_adaptive(r_integral, 0.0, 2.0 * kPi, level, plain),
                                       "cubature");
  const double lhs = c1 * total.real();

  double lap_max = 0.0;
  for (const auto& [x, y, t] : std::vector<std::array<double, 3>>{
           {0, 0, 0}, {eps, 0, 0}, {-eps, 0, 0}, {0, eps, 0}, {0, -eps, 0}, {0, 0, eps2}, {0, 0, -eps2}})
    lap_max = std::max(lap_max, std::abs(heisenberg::apply_sublaplacian(phi, HeisenbergPoint({Complex(x, y)}, t))));
  const double ball = kPi * kPi * c1 * eps2;
  const double error = c1 * total.error_estimate + 2.0 * lap_max * ball;

  const double rhs = phi.value(origin);
  Parameters params = {{"exclusion_radius", num(exclusion_radius)},
                       {"box_radius", num(box_radius)},
                       {"ratio", rhs != 0.0 ? num(lhs / rhs) : std::string("nan")},
                       {"error_estimate", num(error)}};
  return make_report("distributional", std::move(params), lhs, rhs, 1e-2);
}

Suite parse_suite(const std::string& name) {
  if (name == "chain") return Suite::chain;
  if (name == "kernels") return Suite::kernels;
  if (name == "distributional") return Suite::distributional;
  if (name == "all") return Suite::all;
  throw Error(ErrorKind::usage, "unknown suite '" + name + "' (expected all, chain, kernels or distributional)");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::chain: return "chain";
    case Suite::kernels: return "kernels";
    case Suite::distributional: return "distributional";
    case Suite::all: return "all";
  }
  return "all";
}

namespace {

struct Task {
  std::string identity_id;
  Parameters parameters;
  std::function<std::vector<VerificationReport>()> run;
};

template <class F>
Task single(std::string id, Parameters params, F f) {
  return {std::move(id), std::move(params), [f] { return std::vector<VerificationReport>{f()}; }};
}

std::vector<VerificationReport> execute(const std::vector<Task>& tasks) {
  const auto chunks = parallel_map<std::vector<VerificationReport>>(tasks.size(), [&](std::size_t i) {
    try {
      return tasks[i].run();
    } catch (const std::exception& e) {
      Parameters params = tasks[i].parameters;
      params.emplace_back("error", e.what());
      VerificationReport r = make_report(tasks[i].identity_id, std::move(params), 0.0, 0.0, 0.0);
      r.abs_residual = r.rel_residual = std::numeric_limits<double>::max();
      r.pass = false;
      return std::vector<VerificationReport>{r};
    }
  });
  std::vector<VerificationReport> out;
  for (const auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<Task> chain_tasks(std::uint64_t seed, const QuadratureConfig& cfg) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::vector<Task> tasks;

  auto laplace = [&](double nu, double alpha, double theta) {
    tasks.push_back(single("laplace_cosine", {{"nu", num(nu)}, {"alpha", num(alpha)}, {"theta", num(theta)}},
                           [=] { return check_laplace_cosine(nu, alpha, theta, cfg); }));
  };
  laplace(1, 1, 0);
  laplace(1, 1, 1);
  laplace(2, 1, 1);
  for (int k = 0; k < 50; ++k) {
    const double nu = uniform(0.3, 4.0), alpha = uniform(0.2, 3.0), theta = uniform(-6.0, 6.0);
    laplace(nu, alpha, theta);
  }

  auto tform = [&](int n, double mu, double theta) {
    tasks.push_back(single("t_integral_form", {{"n", std::to_string(n)}, {"mu", num(mu)}, {"theta", num(theta)}},
                           [=] { return check_t_integral_form(n, mu, theta, cfg); }));
  };
  tform(1, 2, 0);
  tform(2, 2, 1);
  tform(1, 4, -1);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k < 20; ++k) {
      const double mu = uniform(0.2, 5.0), theta = uniform(-5.0, 5.0);
      tform(n, mu, theta);
    }

  auto arc = [&](double beta) {
    tasks.push_back(single("arc_identity", {{"beta", num(beta)}}, [=] { return check_arc_identity(beta); }));
  };
  for (double beta : {1.0, 3.0, 1e-8}) arc(beta);
  for (int k = 0; k < 50; ++k) arc(std::pow(10.0, uniform(-8.0, 8.0)));

  auto legendre = [&](double nu, double a, double eps) {
    tasks.push_back(single("cos_power_legendre", {{"nu", num(nu)}, {"a", num(a)}, {"eps", num(eps)}},
                           [=] { return check_cos_power_legendre(nu, a, eps, cfg); }));
  };
  legendre(0.5, 1, kPi / 2);
  legendre(0.5, 2, kPi / 3);
  legendre(0.5, 2, 1e-3);
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0})
    for (int k = 0; k < 10; ++k) {
      const double a = uniform(0.2, 5.0), eps = uniform(0.05, 3.0);
      legendre(nu, a, eps);
    }

  auto gegen = [&](double sigma, double eps) {
    tasks.push_back(single("gegenbauer", {{"sigma", num(sigma)}, {"eps", num(eps)}},
                           [=] { return check_gegenbauer(sigma, eps); }));
  };
  gegen(1e-8, 1.0);
  gegen(0.5, kPi / 2);
  gegen(2.0, kPi / 2);
  for (int k = 0; k < 50; ++k) {
    const double sigma = uniform(0.01, 6.0), eps = uniform(0.05, 3.0);
    gegen(sigma, eps);
  }

  auto dup = [&](double xi) {
    tasks.push_back(single("duplication", {{"xi", num(xi)}}, [=] { return check_duplication(xi); }));
  };
  dup(0.5);
  dup(1.0);
  for (int n = 1; n <= 8; ++n) dup(0.5 * n);
  for (int k = 0; k < 50; ++k) dup(uniform(0.05, 40.0));
  return tasks;
}

std::vector<Task> kernel_tasks(std::uint64_t seed, const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  for (int n = 1; n <= 4; ++n)
    for (double zmag : {0.25, 0.5, 1.0, 2.0})
      for (double tau : {0.0, 0.5, 1.0, 4.0, 10.0}) {
        const auto p = axis_point(n, zmag, tau);
        tasks.push_back({"integral_vs_closed",
                         {{"n", std::to_string(n)}, {"z", format_z(p)}, {"tau", num(tau)}},
                         [=] { return check_integral_vs_closed(n, p, cfg); }});
      }

  for (int n = 1; n <= 2; ++n)
    for (double tau : {0.0, 1.0}) {
      const auto p = axis_point(n, 1.0, tau);
      tasks.push_back({"resolvent_limit",
                       {{"n", std::to_string(n)}, {"z", format_z(p)}, {"tau", num(tau)}},
                       [=] { return check_resolvent_limit(n, p, HeisenbergPoint::identity(n), 4, cfg); }});
    }

  tasks.push_back(single("resolvent_golden", {{"n", "1"}, {"z", "1:0"}, {"tau", "0"}, {"zeta", "-1"}}, [=] {
    kernels::KernelQuery q;
    q.p = axis_point(1, 1.0, 0.0);
    q.zeta = Complex(-1.0, 0.0);
    q.cfg = cfg;
    const auto r = kernels::resolvent(q);
    return make_report("resolvent_golden", {{"n", "1"}, {"z", "1:0"}, {"tau", "0"}, {"zeta", "-1"}}, r.value,
                       kGoldenResolvent, 1e-6);
  }));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  auto random_point = [&](int n) {
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (auto& c : z) c = {coord(rng), coord(rng)};
    return HeisenbergPoint(z, coord(rng));
  };
  for (int k = 0; k < 10; ++k) {
    const int n = 1 + k % 2;
    const auto p = random_point(n), q = random_point(n), g = random_point(n);
    const double zeta = -0.25 - 0.25 * (k % 4);
    Parameters params = {{"n", std::to_string(n)}, {"z", format_z(p)}, {"tau", num(p.tau())},
                         {"w", format_z(q)},       {"s", num(q.tau())}, {"zeta", num(zeta)}};
    tasks.push_back({"resolvent_invariance", params, [=] {
                       kernels::KernelQuery a;
                       a.n = n;
                       a.p = p;
                       a.q = q;
                       a.zeta = Complex(zeta, 0.0);
                       a.cfg = cfg;
                       kernels::KernelQuery b = a;
                       b.p = q;
                       b.q = p;
                       kernels::KernelQuery c = a;
                       c.p = multiply(g, p);
                       c.q = multiply(g, q);
                       const Complex ra = kernels::resolvent(a).value;
                       Parameters moved = params;
                       moved.emplace_back("g", format_z(g) + "," + num(g.tau()));
                       return std::vector<VerificationReport>{
                           make_report("resolvent_symmetry", params, kernels::resolvent(b).value, ra, 1e-9),
                           make_report("resolvent_left_invariance", moved, kernels::resolvent(c).value, ra, 1e-9)};
                     }});
  }

  for (int n = 1; n <= 4; ++n)
    tasks.push_back(single("bessel_fast_path", {{"a", num(0.5 * n)}}, [=] {
      std::vector<double> grid;
      for (int k = 0; k <= 40; ++k) grid.push_back(1e-4 * std::pow(6e6, k / 40.0));
      const auto check = special::validate_bessel_fast_path(0.5 * n, grid);
      return make_report("bessel_fast_path",
                         {{"a", num(0.5 * n)}, {"points", std::to_string(check.points)}, {"worst_u", num(check.worst_u)}},
                         check.max_rel_deviation, 0.0, 1e-10);
    }));
  return tasks;
}

}  // namespace

std::vector<VerificationReport> run_chain(std::uint64_t seed, const QuadratureConfig& cfg) {
  return execute(chain_tasks(seed, cfg));
}

std::vector<VerificationReport> run_kernels(std::uint64_t seed, const QuadratureConfig& cfg) {
  return execute(kernel_tasks(seed, cfg));
}

std::vector<VerificationReport> run_distributional(const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  auto functions = std::make_shared<std::vector<heisenberg::NamedTestFunction>>(heisenberg::standard_test_functions());
  for (std::size_t i = 0; i < functions->size(); ++i) {
    const auto& f = (*functions)[i];
    Parameters params = {{"phi", f.name}};
    tasks.push_back({"distributional", params, [=] {
                       const auto& phi = (*functions)[i].phi;
                       VerificationReport r = check_distributional(phi, cfg, 1e-3, phi.support_radius);
                       r.parameters.insert(r.parameters.begin(), params.front());
                       return std::vector<VerificationReport>{r};
                     }});
  }
  auto rows = execute(tasks);

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  int counted = 0;
  for (const auto& r : rows) {
    if (r.rhs == Complex{} || r.abs_residual == std::numeric_limits<double>::max()) continue;
    const double ratio = r.lhs.real() / r.rhs.real();
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    ++counted;
  }
  if (counted >= 2) {
    rows.push_back(make_report("distributional_ratio_consistency",
                               {{"functions", std::to_string(counted)}, {"ratio", num(0.5 * (lo + hi))}}, hi, lo,
                               1e-2));
  }
  return rows;
}

std::vector<VerificationReport> run_suite(Suite suite, std::uint64_t seed, const QuadratureConfig& cfg) {
  switch (suite) {
    case Suite::chain: return run_chain(seed, cfg);
    case Suite::kernels: return run_kernels(seed, cfg);
    case Suite::distributional: return run_distributional(cfg);
    case Suite::all: {
      auto out = run_chain(seed, cfg);
      for (auto rows : {run_kernels(seed, cfg), run_distributional(cfg)})
        out.insert(out.end(), rows.begin(), rows.end());
      return out;
    }
  }
  return {};
}

}  // namespace heiskern::verify
