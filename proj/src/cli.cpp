#include "heiskern/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>

#include "heiskern/error.hpp"
#include "heiskern/heisenberg.hpp"
#include "heiskern/kernels.hpp"
#include "heiskern/parallel.hpp"
#include "heiskern/verify.hpp"

namespace heiskern::cli {
namespace {

using heisenberg::HeisenbergPoint;
using numerics::Complex;
using verify::format_number;

enum class LogLevel { quiet, info, debug };

LogLevel log_level(std::ostream& err) {
  const char* env = std::getenv("HEISKERN_LOG");
  if (!env || std::string(env).empty() || std::string(env) == "info") return LogLevel::info;
  if (std::string(env) == "quiet") return LogLevel::quiet;
  if (std::string(env) == "debug") return LogLevel::debug;
  err << "warning: HEISKERN_LOG='" << env << "' not one of quiet, info, debug; using info\n";
  return LogLevel::info;
}

class Log {
 public:
  Log(LogLevel level, std::ostream& err) : level_(level), err_(err) {}
  void info(const std::string& msg) const {
    if (level_ != LogLevel::quiet) err_ << "[info] " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level_ == LogLevel::debug) err_ << "[debug] " << msg << '\n';
  }

 private:
  LogLevel level_;
  std::ostream& err_;
};

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

HeisenbergPoint make_point(int n, const std::string& z, double tau, const char* flag) {
  std::vector<Complex> coords;
  try {
    coords = heisenberg::parse_z(z);
  } catch (const Error& e) {
    throw Usage(std::string(flag) + ": " + e.what());
  }
  if (static_cast<int>(coords.size()) != n)
    throw Usage(std::string(flag) + " has " + std::to_string(coords.size()) + " coordinates but --n is " +
                std::to_string(n));
  return HeisenbergPoint(std::move(coords), tau);
}


struct EvalFollandArgs {
  int n = 1;
  std::string z;
  double tau = 0.0;
  std::string method = "integral";
  std::optional<double> tol;
  std::string inner = "bessel";
};

struct EvalResolventArgs {
  int n = 1;
  std::string zeta;
  std::string z;
  double tau = 0.0;
  std::optional<std::string> w;
  double s = 0.0;
  std::optional<double> tol;
};

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  std::optional<std::string> text;
};

struct SweepArgs {
  std::vector<int> n;
  std::vector<double> zmag;
  std::vector<double> tau;
  std::string out;
  std::optional<double> tol;
  bool no_timing = false;
};

numerics::QuadratureConfig config_with(const std::optional<double>& tol) {
  numerics::QuadratureConfig cfg;
  if (tol) {
    if (!(*tol > 0.0)) throw Usage("--tol must be positive");
    cfg.rel_tol = *tol;
  }
  return cfg;
}

int eval_folland(const EvalFollandArgs& a, std::ostream& out, const Log& log) {
  const auto p = make_point(a.n, a.z, a.tau, "--z");
  const auto cfg = config_with(a.tol);
  const auto inner = a.inner == "nested" ? kernels::InnerMethod::nested : kernels::InnerMethod::bessel;
  const auto identity = HeisenbergPoint::identity(a.n);

  double value = 0.0, error = 0.0;
  long evaluations = 0;
  bool converged = true;
  std::string note;
  if (a.method == "closed") {
    value = kernels::folland_closed(p, a.n);
  } else if (p.z_norm2() == 0.0) {
    value = a.method == "green" ? kernels::green_r0_closed(p, identity, a.n) : kernels::folland_closed(p, a.n);
    note = "closed-form fallback (z=0)";
  } else {
    const auto r = a.method == "green" ? kernels::green_r0(p, identity, a.n, cfg, inner)
                                       : kernels::folland_integral(p, a.n, cfg, inner);
    value = r.real();
    error = r.error_estimate;
    evaluations = r.evaluations;
    converged = r.converged;
  }
  log.debug("folland n=" + std::to_string(a.n) + " method=" + a.method + " inner=" + a.inner);
  out << "value=" << format_number(value) << " error_estimate=" << format_number(error) << " method=" << a.method
      << " evaluations=" << evaluations << " converged=" << (converged ? "true" : "false");
  if (!note.empty()) out << " note=\"" << note << "\"";
  out << '\n';
  return converged ? 0 : 1;
}

int eval_resolvent(const EvalResolventArgs& a, std::ostream& out, const Log& log) {
  kernels::KernelQuery q;
  q.n = a.n;
  q.p = make_point(a.n, a.z, a.tau, "--z");
  if (a.w) q.q = make_point(a.n, *a.w, a.s, "--w");
  else if (a.s != 0.0) q.q = HeisenbergPoint(std::vector<Complex>(static_cast<std::size_t>(a.n)), a.s);
  try {
    q.zeta = heisenberg::parse_complex(a.zeta);
  } catch (const Error& e) {
    throw Usage(std::string("--zeta: ") + e.what());
  }
  if (!(q.zeta->real() < 0.0)) throw Usage("--zeta needs a negative real part");
  q.cfg = config_with(a.tol);
  log.debug("resolvent n=" + std::to_string(a.n) + " zeta=" + a.zeta);
  const auto r = kernels::resolvent(q);
  out << "value_re=" << format_number(r.value.real()) << " value_im=" << format_number(r.value.imag())
      << " error_estimate=" << format_number(r.error_estimate) << " method=integral evaluations=" << r.evaluations
      << " converged=" << (r.converged ? "true" : "false") << '\n';
  return r.converged ? 0 : 1;
}

int run_verify(const VerifyArgs& a, std::ostream& out, const Log& log) {
  const auto suite = verify::parse_suite(a.suite);
  const auto start = std::chrono::steady_clock::now();
  const auto rows = verify::run_suite(suite, a.seed);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (a.out) {
    std::ofstream f(*a.out);
    if (!f) throw Usage("cannot write " + *a.out);
    verify::write_csv(f, rows);
  }
  if (a.text) {
    std::ofstream f(*a.text);
    if (!f) throw Usage("cannot write " + *a.text);
    verify::write_text(f, rows);
  }

  struct Tally {
    int rows = 0, passed = 0;
    double worst = 0.0;
  };
  std::vector<std::string> order;
  std::map<std::string, Tally> tally;
  bool all_pass = true;
  for (const auto& r : rows) {
    if (!tally.count(r.identity_id)) order.push_back(r.identity_id);
    auto& t = tally[r.identity_id];
    ++t.rows;
    t.passed += r.pass ? 1 : 0;
    t.worst = std::max(t.worst, std::min(r.abs_residual, r.rel_residual));
    all_pass = all_pass && r.pass;
  }
  char line[160];
  std::snprintf(line, sizeof line, "%-34s %6s %6s %6s  %s\n", "identity", "rows", "pass", "fail", "worst_residual");
  out << line;
  for (const auto& id : order) {
    const auto& t = tally[id];
    std::snprintf(line, sizeof line, "%-34s %6d %6d %6d  %.3e\n", id.c_str(), t.rows, t.passed, t.rows - t.passed,
                  t.worst);
    out << line;
  }
  for (const auto& r : rows)
    if (r.identity_id == "distributional_ratio_consistency")
      for (const auto& [k, v] : r.parameters)
        if (k == "ratio") out << "distributional ratio lhs/phi(0) = " << v << '\n';
  out << "suite=" << verify::to_string(suite) << " seed=" << a.seed << " rows=" << rows.size()
      << " result=" << (all_pass ? "PASS" : "FAIL") << '\n';
  log.info("verify finished in " + seconds_text(seconds) + " s");
  return all_pass ? 0 : 1;
}

}  // namespace

bool run_sweep(const SweepSpec& spec, std::ostream& csv, bool timing) {
  if (spec.n_values.empty() || spec.z_magnitudes.empty() || spec.tau_values.empty())
    throw Usage("sweep lists must be non-empty");
  for (int n : spec.n_values)
    if (n < 1 || n > 8) throw Usage("--n values must lie in 1..8");
  for (double z : spec.z_magnitudes)
    if (!(z > 0.0)) throw Usage("--zmag values must be positive");

  struct Point {
    int n;
    double zmag, tau;
  };
  std::vector<Point> grid;
  for (int n : spec.n_values)
    for (double z : spec.z_magnitudes)
      for (double t : spec.tau_values) grid.push_back({n, z, t});

  struct Row {
    std::string text;
    bool ok = false;
  };
  const auto rows = parallel_map<Row>(grid.size(), [&](std::size_t i) {
    const Point& g = grid[i];
    std::vector<Complex> z(static_cast<std::size_t>(g.n));
    z[0] = g.zmag;
    const HeisenbergPoint p(z, g.tau);
    const double closed = kernels::folland_closed(p, g.n);
    const auto start = std::chrono::steady_clock::now();
    double integral = std::numeric_limits<double>::quiet_NaN();
    long evaluations = 0;
    bool ok = false;
    try {
      const auto r = kernels::folland_integral(p, g.n, spec.cfg);
      integral = r.real();
      evaluations = r.evaluations;
      ok = r.converged;
    } catch (const Error&) {
    }
    const double seconds =
        timing ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() : 0.0;
    const double abs_err = std::abs(integral - closed);
    std::string text = std::to_string(g.n) + ',' + format_number(g.zmag) + ',' + format_number(g.tau) + ',' +
                       format_number(closed) + ',' + format_number(integral) + ',' + format_number(abs_err) + ',' +
                       format_number(abs_err / closed) + ',' + std::to_string(evaluations) + ',' +
                       format_number(seconds) + '\n';
    return Row{std::move(text), ok};
  });

  csv << "n,zmag,tau,closed,integral,abs_err,rel_err,evaluations,seconds\n";
  bool all_ok = true;
  for (const auto& r : rows) {
    csv << r.text;
    all_ok = all_ok && r.ok;
  }
  return all_ok;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  const Log log(log_level(err), err);

  CLI::App app{"Heisenberg group fundamental solution and resolvent kernels"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Evaluate a kernel at one point");
  eval->require_subcommand(1);

  EvalFollandArgs fa;
  auto* folland = eval->add_subcommand("folland", "Fundamental solution with source at the identity");
  folland->add_option("--n", fa.n, "Heisenberg dimension")->required()->check(CLI::Range(1, 8));
  folland->add_option("--z", fa.z, "z as re:im pairs separated by ';'")->required();
  folland->add_option("--tau", fa.tau, "central coordinate")->required();
  folland->add_option("--method", fa.method, "closed, integral or green")
      ->check(CLI::IsMember({"closed", "integral", "green"}));
  folland->add_option("--tol", fa.tol, "relative quadrature tolerance");
  folland->add_option("--inner", fa.inner, "inner Psi evaluation: bessel or nested")
      ->check(CLI::IsMember({"bessel", "nested"}));

  EvalResolventArgs ra;
  auto* resolvent = eval->add_subcommand("resolvent", "Resolvent kernel R(zeta; p, q)");
  resolvent->add_option("--n", ra.n, "Heisenberg dimension")->required()->check(CLI::Range(1, 8));
  resolvent->add_option("--zeta", ra.zeta, "spectral parameter re:im, Re < 0")->required();
  resolvent->add_option("--z", ra.z, "z of p")->required();
  resolvent->add_option("--tau", ra.tau, "tau of p")->required();
  resolvent->add_option("--w", ra.w, "z of q (default 0)");
  resolvent->add_option("--s", ra.s, "tau of q (default 0)");
  resolvent->add_option("--tol", ra.tol, "relative quadrature tolerance");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run identity checks and write a report");
  verify_cmd->add_option("--suite", va.suite, "all, chain, kernels or distributional")
      ->check(CLI::IsMember({"all", "chain", "kernels", "distributional"}));
  verify_cmd->add_option("--seed", va.seed, "seed for random parameter draws");
  verify_cmd->add_option("--out", va.out, "CSV report path");
  verify_cmd->add_option("--text", va.text, "text report path");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Closed form vs integral representation over a grid");
  sweep->add_option("--n", sa.n, "dimensions, comma separated")->required()->delimiter(',');
  sweep->add_option("--zmag", sa.zmag, "|z| values, comma separated")->required()->delimiter(',');
  sweep->add_option("--tau", sa.tau, "tau values, comma separated")->required()->delimiter(',');
  sweep->add_option("--out", sa.out, "CSV output path")->required();
  sweep->add_option("--tol", sa.tol, "relative quadrature tolerance");
  sweep->add_flag("--no-timing", sa.no_timing, "write 0 in the seconds column");

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  if (raw.empty()) raw.push_back("heiskern");
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (const auto nl = msg.find('\n'); nl != std::string::npos) msg.resize(nl);
    err << "usage error: " << msg << '\n';
    return 2;
  }

  try {
    if (folland->parsed()) return eval_folland(fa, out, log);
    if (resolvent->parsed()) return eval_resolvent(ra, out, log);
    if (verify_cmd->parsed()) return run_verify(va, out, log);
    if (sweep->parsed()) {
      SweepSpec spec{sa.n, sa.zmag, sa.tau, config_with(sa.tol), sa.out};
      std::ofstream f(spec.output_path);
      if (!f) throw Usage("cannot write " + spec.output_path);
      const auto start = std::chrono::steady_clock::now();
      const bool ok = run_sweep(spec, f, !sa.no_timing);
      log.info("sweep wrote " + spec.output_path + " in " +
               seconds_text(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) + " s");
      if (!ok) err << "sweep: some grid points did not converge\n";
      return ok ? 0 : 1;
    }
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    const bool usage = e.kind() == ErrorKind::usage || e.kind() == ErrorKind::precondition ||
                       e.kind() == ErrorKind::dimension_mismatch;
    err << (usage ? "usage error: " : "error: ") << e.what() << '\n';
    return usage ? 2 : 1;
  }
  return 2;
}

}  // namespace heiskern::cli
