#include "heiskern/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "heiskern/error.hpp"

namespace heiskern::numerics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// Gauss-Kronrod 21-point abscissae; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

enum class SegmentMap { linear, sqrt_lower, sqrt_upper };

struct Segment {
  double x0, x1;
  SegmentMap map;

  // Parameter interval the panels of this segment live in.
  double p0() const { return map == SegmentMap::linear ? x0 : 0.0; }
  double p1() const { return map == SegmentMap::linear ? x1 : std::sqrt(x1 - x0); }
};

struct Panel {
  std::size_t segment;
  double a, b;
  Complex value;
  double error;
  bool splittable;
};

struct PanelOrder {
  bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

struct RuleResult {
  Complex value;
  double error;
};

class Evaluator {
 public:
  Evaluator(const ComplexIntegrand& f, const std::vector<Segment>& segments)
      : f_(f), segments_(segments) {}

  Complex operator()(std::size_t seg, double p) {
    const Segment& s = segments_[seg];
    double x = p;
    double jac = 1.0;
    switch (s.map) {
      case SegmentMap::linear:
        break;
      case SegmentMap::sqrt_lower:
        x = s.x0 + p * p;
        jac = 2.0 * p;
        break;
      case SegmentMap::sqrt_upper:
        x = s.x1 - p * p;
        jac = 2.0 * p;
        break;
    }
    ++evaluations;
    const Complex v = f_(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::non_finite_integrand, "integrand sample at x = " + std::to_string(x));
    return v * jac;
  }

  long evaluations = 0;

 private:
  const ComplexIntegrand& f_;
  const std::vector<Segment>& segments_;
};

RuleResult kronrod21(Evaluator& eval, std::size_t seg, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<Complex, 10> fv1;
  std::array<Complex, 10> fv2;
  const Complex fc = eval(seg, centre);
  Complex res_g{0.0, 0.0};
  Complex res_k = kWgk[10] * fc;
  double res_abs = kWgk[10] * std::abs(fc);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = eval(seg, centre - dx);
    fv2[j] = eval(seg, centre + dx);
    const Complex sum = fv1[j] + fv2[j];
    res_k += kWgk[j] * sum;
    res_abs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * sum;
  }
  const Complex mean = 0.5 * res_k;
  double res_asc = kWgk[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j)
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * res_abs, err);
  return {res_k * half, err};
}

// Children must stay wide enough that the outermost Kronrod node of a child
// never rounds onto its endpoint.
bool can_split(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), kTiny});
  return (b - a) > 4096.0 * kEps * scale;
}

QuadratureResult run_adaptive(const ComplexIntegrand& f, std::span<const double> breaks,
                              const QuadratureConfig& cfg, bool sqrt_lower, bool sqrt_upper) {
  std::vector<double> pts(breaks.begin(), breaks.end());
  if (sqrt_lower && sqrt_upper && pts.size() == 2) pts.insert(pts.begin() + 1, 0.5 * (pts[0] + pts[1]));

  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    SegmentMap map = SegmentMap::linear;
    if (sqrt_lower && i == 0) map = SegmentMap::sqrt_lower;
    if (sqrt_upper && i + 2 == pts.size()) map = SegmentMap::sqrt_upper;
    segments.push_back({pts[i], pts[i + 1], map});
  }

  Evaluator eval(f, segments);
  std::vector<Panel> heap;
  heap.reserve(segments.size() + 2 * static_cast<std::size_t>(cfg.max_subdivisions));
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const double a = segments[s].p0();
    const double b = segments[s].p1();
    const RuleResult r = kronrod21(eval, s, a, b);
    heap.push_back({s, a, b, r.value, r.error, can_split(a, b)});
  }
  std::make_heap(heap.begin(), heap.end(), PanelOrder{});

  auto totals = [&heap] {
    Complex v{0.0, 0.0};
    double e = 0.0;
    for (const Panel& p : heap) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  int splits = 0;
  while (error > cfg.target(std::abs(value)) && splits < cfg.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), PanelOrder{});
    const Panel worst = heap.back();
    if (!worst.splittable) {
      std::push_heap(heap.begin(), heap.end(), PanelOrder{});
      break;
    }
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const RuleResult left = kronrod21(eval, worst.segment, worst.a, mid);
    const RuleResult right = kronrod21(eval, worst.segment, mid, worst.b);
    heap.push_back({worst.segment, worst.a, mid, left.value, left.error, can_split(worst.a, mid)});
    std::push_heap(heap.begin(), heap.end(), PanelOrder{});
    heap.push_back({worst.segment, mid, worst.b, right.value, right.error, can_split(mid, worst.b)});
    std::push_heap(heap.begin(), heap.end(), PanelOrder{});
    ++splits;
    if (splits % 128 == 0) {
      std::tie(value, error) = totals();
    } else {
      value += left.value + right.value - worst.value;
      error = std::max(0.0, error + left.error + right.error - worst.error);
    }
  }
  std::tie(value, error) = totals();

  QuadratureResult out;
  out.value = value;
  out.error_estimate = error;
  out.evaluations = eval.evaluations;
  out.converged = error <= cfg.target(std::abs(value));
  return out;
}

void check_breaks(std::span<const double> breaks) {
  if (breaks.size() < 2) throw Error(ErrorKind::precondition, "need at least two breakpoints");
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i])) throw Error(ErrorKind::precondition, "non-finite integration limit");
    if (i > 0 && !(breaks[i] > breaks[i - 1]))
      throw Error(ErrorKind::precondition, "integration limits must be strictly increasing");
  }
}

QuadratureResult better_of(QuadratureResult first, QuadratureResult second) {
  const long evals = first.evaluations + second.evaluations;
  QuadratureResult pick = second;
  if (first.converged && !second.converged) pick = first;
  if (first.converged == second.converged && first.error_estimate < second.error_estimate) pick = first;
  pick.evaluations = evals;
  return pick;
}

QuadratureResult dispatch(const ComplexIntegrand& f, std::span<const double> breaks,
                          const QuadratureConfig& cfg, EndpointTreatment endpoints,
                          bool auto_lower, bool auto_upper) {
  switch (endpoints) {
    case EndpointTreatment::none:
      return run_adaptive(f, breaks, cfg, false, false);
    case EndpointTreatment::sqrt_lower:
      return run_adaptive(f, breaks, cfg, true, false);
    case EndpointTreatment::sqrt_upper:
      return run_adaptive(f, breaks, cfg, false, true);
    case EndpointTreatment::sqrt_both:
      return run_adaptive(f, breaks, cfg, true, true);
    case EndpointTreatment::automatic:
      break;
  }
  QuadratureResult plain = run_adaptive(f, breaks, cfg, false, false);
  if (plain.converged) return plain;
  return better_of(plain, run_adaptive(f, breaks, cfg, auto_lower, auto_upper));
}

ComplexIntegrand lift(const RealIntegrand& f) {
  return [&f](double x) { return Complex{f(x), 0.0}; };
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw Error(ErrorKind::precondition, "quadrature tolerances must be positive");
  if (max_subdivisions < 1) throw Error(ErrorKind::precondition, "max_subdivisions must be >= 1");
  if (!(tail_epsilon > 0.0)) throw Error(ErrorKind::precondition, "tail_epsilon must be positive");
  if (oscillation_period && !(*oscillation_period > 0.0))
    throw Error(ErrorKind::precondition, "oscillation_period must be positive");
}

double QuadratureConfig::target(double magnitude) const { return std::max(abs_tol, rel_tol * magnitude); }

QuadratureResult integrate_breakpoints(const ComplexIntegrand& f, std::span<const double> breaks,
                                       const QuadratureConfig& cfg, EndpointTreatment endpoints) {
  cfg.validate();
  check_breaks(breaks);
  return dispatch(f, breaks, cfg, endpoints, true, true);
}

QuadratureResult integrate_adaptive_complex(const ComplexIntegrand& f, double a, double b,
                                            const QuadratureConfig& cfg, EndpointTreatment endpoints) {
  const std::array<double, 2> breaks{a, b};
  return integrate_breakpoints(f, breaks, cfg, endpoints);
}

QuadratureResult integrate_adaptive(const RealIntegrand& f, double a, double b,
                                    const QuadratureConfig& cfg, EndpointTreatment endpoints) {
  return integrate_adaptive_complex(lift(f), a, b, cfg, endpoints);
}

double truncation_point(const TailEnvelope& env, double tail_epsilon, double lower) {
  const double rate = env.decay_rate;
  const double log_ratio = std::log(std::max(env.scale, kTiny) / (tail_epsilon * rate));
  const double floor_x = std::max(lower, 0.0) + 1.0 / rate;
  double x = std::max(log_ratio / rate, floor_x);
  for (int i = 0; i < 2; ++i) x = std::max((env.power * std::log(std::max(x, 1.0)) + log_ratio) / rate, floor_x);
  return x;
}

QuadratureResult integrate_semi_infinite_complex(const ComplexIntegrand& f, const QuadratureConfig& cfg,
                                                 const TailEnvelope& env, double lower) {
  cfg.validate();
  if (!(env.decay_rate > 0.0) || !std::isfinite(env.decay_rate))
    throw Error(ErrorKind::precondition, "decay_rate must be positive");
  if (!std::isfinite(lower) || lower < 0.0) throw Error(ErrorKind::precondition, "lower limit must be >= 0");

  const double rate = env.decay_rate;
  auto log_shape = [&](double x) { return env.power * std::log(std::max(x, 1.0)) - rate * x; };

  TailEnvelope used = env;
  long probe_evals = 0;
  if (!(used.scale > 0.0)) {
    double scale = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double x = lower + (0.25 + 0.731 * k) / rate;
      const double mag = std::abs(f(x));
      ++probe_evals;
      if (mag > 0.0 && std::isfinite(mag)) scale = std::max(scale, mag * std::exp(-log_shape(x)));
    }
    used.scale = scale > 0.0 ? scale : kTiny;
  }

  const double cut = truncation_point(used, cfg.tail_epsilon, lower);
  std::vector<double> breaks{lower};
  if (cfg.oscillation_period) {
    const double h = 0.5 * *cfg.oscillation_period;
    const double panels = std::ceil((cut - lower) / h);
    if (panels > 50.0 * cfg.max_subdivisions)
      throw Error(ErrorKind::resolution_budget,
                  "oscillatory tail needs " + std::to_string(panels) + " half-period panels");
    // Boundaries on the global half-period lattice k*h.
    double next = (std::floor(lower / h) + 1.0) * h;
    while (next < cut) {
      if (next > lower) breaks.push_back(next);
      next += h;
    }
    breaks.push_back(next);
  } else {
    const double width = 2.0 / rate;
    for (double x = lower + width; x < cut; x += width) breaks.push_back(x);
    breaks.push_back(cut);
  }

  const double far = lower + 0.5 * (breaks.back() - lower);
  double worst_ratio = 0.0;
  const ComplexIntegrand watched = [&](double x) {
    const Complex v = f(x);
    if (x >= far) {
      const double mag = std::abs(v);
      if (mag > 0.0) worst_ratio = std::max(worst_ratio, mag / (used.scale * std::exp(log_shape(x))));
    }
    return v;
  };

  QuadratureResult result = dispatch(watched, breaks, cfg, EndpointTreatment::automatic, true, false);
  result.evaluations += probe_evals;
  if (worst_ratio > 10.0)
    throw Error(ErrorKind::decay_hint_violated,
                "samples exceed the decay envelope by a factor " + std::to_string(worst_ratio));
  return result;
}

QuadratureResult integrate_semi_infinite(const RealIntegrand& f, const QuadratureConfig& cfg,
                                         const TailEnvelope& env, double lower) {
  return integrate_semi_infinite_complex(lift(f), cfg, env, lower);
}

QuadratureResult integrate_semi_infinite(const RealIntegrand& f, const QuadratureConfig& cfg,
                                         double decay_rate) {
  return integrate_semi_infinite(f, cfg, TailEnvelope{decay_rate, 0.0, 0.0});
}

}  // namespace heiskern::numerics
