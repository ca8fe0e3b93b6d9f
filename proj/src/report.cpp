#include "heiskern/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace heiskern::verify {

bool VerificationReport::recompute_pass() const { return abs_residual <= tolerance || rel_residual <= tolerance; }

VerificationReport make_report(std::string identity_id, Parameters parameters, Complex lhs, Complex rhs,
                               double tolerance) {
  VerificationReport r;
  r.identity_id = std::move(identity_id);
  r.parameters = std::move(parameters);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.abs_residual = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.rel_residual = scale > 0.0 ? r.abs_residual / scale : 0.0;
  if (!std::isfinite(r.abs_residual) || !std::isfinite(r.rel_residual)) {
    r.abs_residual = r.rel_residual = std::numeric_limits<double>::max();
  }
  r.pass = r.recompute_pass();
  return r;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_parameters(const Parameters& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ';';
    out += k + '=' + v;
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_csv(std::ostream& os, std::span<const VerificationReport> reports) {
  os << "identity_id,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tolerance,pass\n";
  for (const auto& r : reports) {
    os << csv_field(r.identity_id) << ',' << csv_field(format_parameters(r.parameters)) << ','
       << format_number(r.lhs.real()) << ',' << format_number(r.lhs.imag()) << ',' << format_number(r.rhs.real())
       << ',' << format_number(r.rhs.imag()) << ',' << format_number(r.abs_residual) << ','
       << format_number(r.rel_residual) << ',' << format_number(r.tolerance) << ',' << (r.pass ? "true" : "false")
       << '\n';
  }
}

void write_text(std::ostream& os, std::span<const VerificationReport> reports) {
  bool first = true;
  for (const auto& r : reports) {
    if (!first) os << '\n';
    first = false;
    os << "identity_id: " << r.identity_id << '\n';
    os << "params: " << format_parameters(r.parameters) << '\n';
    os << "lhs: " << format_number(r.lhs.real()) << ' ' << format_number(r.lhs.imag()) << '\n';
    os << "rhs: " << format_number(r.rhs.real()) << ' ' << format_number(r.rhs.imag()) << '\n';
    os << "abs_residual: " << format_number(r.abs_residual) << '\n';
    os << "rel_residual: " << format_number(r.rel_residual) << '\n';
    os << "tolerance: " << format_number(r.tolerance) << '\n';
    os << "pass: " << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace heiskern::verify
