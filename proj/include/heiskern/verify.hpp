#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heiskern/heisenberg.hpp"
#include "heiskern/quadrature.hpp"
#include "heiskern/report.hpp"

namespace heiskern::verify {

using heisenberg::HeisenbergPoint;
using heisenberg::TestFunction;
using numerics::QuadratureConfig;

/// int_0^inf x^(nu-1) e^(-alpha x) cos(theta x) dx
///   = Gamma(nu) (alpha^2 + theta^2)^(-nu/2) cos(nu arctan(theta/alpha)).
VerificationReport check_laplace_cosine(double nu, double alpha, double theta, const QuadratureConfig& cfg);

/// The t-integral form of the Green kernel against its closed form
/// 2^(n-1) Gamma(n/2)^2 / pi^(n+1/2) (mu^2/4 + theta^2)^(-n/2).
VerificationReport check_t_integral_form(int n, double mu, double theta, const QuadratureConfig& cfg);

/// arccos((1-beta)/(1+beta)) = 2 arctan(sqrt(beta))
VerificationReport check_arc_identity(double beta);

/// int_0^eps (cos x - cos eps)^(nu-1/2) cos(a x) dx
///   = sqrt(pi/2) sin(eps)^nu Gamma(nu+1/2) P^(-nu)_(a-1/2)(cos eps).
VerificationReport check_cos_power_legendre(double nu, double a, double eps, const QuadratureConfig& cfg);

/// P^(-sigma)_sigma(cos eps) = (sin(eps)/2)^sigma / Gamma(1+sigma)
VerificationReport check_gegenbauer(double sigma, double eps);

/// Gamma(xi) Gamma(xi+1/2) = 2^(1-2xi) sqrt(pi) Gamma(2xi)
VerificationReport check_duplication(double xi);

/// Two rows: folland_integral / folland_closed against 1 with tolerance
/// max(1e-6, 10 error_estimate / closed), and green_r0(p, identity) /
/// folland_closed against sqrt(pi)/2 with tolerance 1e-6.
std::vector<VerificationReport> check_integral_vs_closed(int n, const HeisenbergPoint& p,
                                                         const QuadratureConfig& cfg);

/// Row k holds lhs = -R(zeta_k)/R_0, rhs = 1 for zeta_k = -10^-k. Its
/// tolerance is the previous row's residual (1 for k = 1), capped at 1e-3 on
/// the last row, so every row passes iff the residuals strictly decrease and
/// the last is <= 1e-3.
std::vector<VerificationReport> check_resolvent_limit(int n, const HeisenbergPoint& p, const HeisenbergPoint& q,
                                                      int k_max, const QuadratureConfig& cfg);

/// (Delta phi, G) on H^1 against phi(0) with relative tolerance 1e-2. The
/// cubature runs in cylindrical coordinates (alpha, r, s) with tau = r^2 sinh s,
/// which absorbs the kernel singularity, over r, |tau| <= box_radius minus the
/// Koranyi ball of radius exclusion_radius; the ball's bound joins the error.
/// Parameters carry ratio = lhs/rhs and the error estimate.
VerificationReport check_distributional(const TestFunction& phi, const QuadratureConfig& cfg,
                                        double exclusion_radius, double box_radius);

enum class Suite { chain, kernels, distributional, all };

Suite parse_suite(const std::string& name);
std::string to_string(Suite s);

/// Seeded parameter draws, evaluated in parallel, reported in a fixed order.
/// A check that throws becomes a failing row carrying the error text.
std::vector<VerificationReport> run_suite(Suite suite, std::uint64_t seed, const QuadratureConfig& cfg = {});

/// Suite pieces, exposed for targeted runs.
std::vector<VerificationReport> run_chain(std::uint64_t seed, const QuadratureConfig& cfg = {});
std::vector<VerificationReport> run_kernels(std::uint64_t seed, const QuadratureConfig& cfg = {});
std::vector<VerificationReport> run_distributional(const QuadratureConfig& cfg = {});

}  // namespace heiskern::verify
