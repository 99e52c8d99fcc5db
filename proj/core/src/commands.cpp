#include "periodlab/commands.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "periodlab/currents.hpp"
#include "periodlab/mahler.hpp"
#include "periodlab/sobol.hpp"
#include "periodlab/special_functions.hpp"

namespace periodlab {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void add_conditions(RunReport& r, const ConditionReport& c) {
  r.add(exact_record("conditions.torus_min_modulus", c.p1_margin, CheckStatus::Info, std::nullopt,
                     c.p1 ? "no zeros on the torus" : "p vanishes on the torus"));
  r.add(exact_record("conditions.positive_orthant_min", c.p2_margin, CheckStatus::Info, std::nullopt,
                     c.p2 ? (c.p2_from_coefficients ? "positive coefficients" : "positive on the sampled grid")
                          : "not positive on the positive orthant"));
  for (std::size_t j = 0; j < c.p3_margins.size(); ++j)
    r.add(exact_record("conditions.slice_margin[j=" + std::to_string(j + 1) + "]", c.p3_margins[j], CheckStatus::Info));
  r.add(exact_record("conditions.slices", c.p3 ? 1.0 : 0.0, CheckStatus::Info, std::nullopt, c.p3_note));
}

QuadratureOptions quadrature(std::uint64_t budget, std::uint64_t seed) {
  QuadratureOptions q;
  q.budget = budget;
  q.seed = seed;
  return q;
}

}  // namespace

std::optional<double> p_alpha_parameter(const LaurentPolynomial& p) {
  if (p.nvars() != 2) return std::nullopt;
  const double alpha = p.constant_term();
  if (p == LaurentPolynomial::p_alpha(alpha)) return alpha;
  return std::nullopt;
}

int exit_status(const RunReport& r) { return r.all_pass() ? 0 : 1; }

RunReport cmd_mahler(const MahlerArgs& args) {
  const auto t0 = Clock::now();
  const LaurentPolynomial p = LaurentPolynomial::parse(args.poly);
  if (p.is_zero()) throw std::invalid_argument("mahler: zero polynomial");
  RunReport r;
  r.command = "mahler";
  r.seed = args.seed;
  r.parameters = {{"poly", p.to_string()},
                  {"budget", std::to_string(args.budget)},
                  {"hypergeometric", args.hypergeometric ? "true" : "false"}};
  if (p.nvars() > 0 && !p.is_constant()) add_conditions(r, check_conditions(p));
  const Estimate m = mahler_measure(p, quadrature(args.budget, args.seed));
  r.add(estimate_record("mahler_measure", m, CheckStatus::Info));
  if (args.hypergeometric) {
    const auto alpha = p_alpha_parameter(p);
    if (alpha && *alpha > 4.0) {
      const double h = mahler_via_hypergeometric(*alpha);
      r.add(exact_record("hypergeometric", h, CheckStatus::Info));
      const double diff = std::abs(m.value.real() - h);
      r.add(exact_record("two_route_difference", diff, gate(diff < 1e-5), 1e-5));
    } else {
      r.add(exact_record("hypergeometric", 0.0, CheckStatus::Info, std::nullopt,
                         "only for alpha + x + 1/x + y + 1/y with alpha > 4"));
    }
  }
  r.wall_seconds = seconds_since(t0);
  return r;
}

RunReport cmd_verify_triple(const TripleArgs& args) {
  const auto t0 = Clock::now();
  if (args.n < 0 || args.n > 3) throw std::invalid_argument("verify-triple: n must lie in 0..3");
  if (args.suite_size < 1) throw std::invalid_argument("verify-triple: suite size must be positive");
  const double tol = args.tol.value_or(args.n <= 1 ? 1e-3 : 5e-3);
  RunReport r;
  r.command = "verify-triple";
  r.seed = args.seed;
  char tol_text[32];
  std::snprintf(tol_text, sizeof tol_text, "%.6g", tol);
  r.parameters = {{"n", std::to_string(args.n)},
                  {"suite_size", std::to_string(args.suite_size)},
                  {"tol", tol_text},
                  {"budget", std::to_string(args.budget)}};
  if (args.n == 0) {
    // P^0 is a point: the log form and the simplex are both the point current.
    r.add(exact_record("fundamental_relation[n=0]", 0.0, CheckStatus::Pass, tol, "theta and simplex coincide; no W term"));
    r.wall_seconds = seconds_since(t0);
    return r;
  }
  VerifyOptions opts;
  opts.suite_size = args.suite_size;
  opts.seed = args.seed;
  opts.tolerance = tol;
  opts.pairing.quadrature.budget = args.budget;
  opts.pairing.quadrature.seed = args.seed;
  r.add_identity(verify_fundamental_relation(args.n, opts));
  for (int j = 1; j <= args.n; ++j) r.add_identity(verify_d_theta(args.n, j, opts));
  for (int j = 0; j < args.n; ++j) r.add_identity(verify_boundary_R(args.n, j, opts));
  if (args.n <= 2)
    for (int j = 1; j <= args.n; ++j) r.add_identity(verify_d_omega(args.n, j, opts));
  r.wall_seconds = seconds_since(t0);
  return r;
}

RunReport cmd_correspondence(const CorrespondenceArgs& args) {
  const auto t0 = Clock::now();
  const LaurentPolynomial p = LaurentPolynomial::parse(args.poly);
  if (p.nvars() < 1 || p.nvars() > 3) throw std::invalid_argument("correspondence: need 1 to 3 variables");
  if (args.samples < 1) throw std::invalid_argument("correspondence: samples must be positive");
  RunReport r;
  r.command = "correspondence";
  r.seed = args.seed;
  r.parameters = {{"poly", p.to_string()}, {"samples", std::to_string(args.samples)}};

  const auto eq = check_equidimensionality(p, args.samples, args.seed);
  r.add(exact_record("fiber.trials", eq.trials, CheckStatus::Info));
  r.add(exact_record("fiber.residual", eq.fiber_residual, gate(eq.trials > 0 && eq.fiber_residual < 1e-10), 1e-10));
  r.add(exact_record("fiber.inverse_error", eq.inverse_error, gate(eq.inverse_error < 1e-12), 1e-12));
  r.add(exact_record("faces.in_divisor", eq.face_in_divisor, gate(eq.face_in_divisor == eq.face_samples), std::nullopt,
                     "of " + std::to_string(eq.face_samples)));
  r.add(exact_record("divisor.violations", eq.pair_violations, gate(eq.pair_violations == eq.pair_samples), std::nullopt,
                     "of " + std::to_string(eq.pair_samples)));
  for (const auto& [s, lam] : eq.approach)
    r.add(exact_record("approach.lambda_modulus", lam, CheckStatus::Info, std::nullopt, "z0 = " + std::to_string(s)));

  const auto pb = verify_pullbacks(p, std::min(args.samples, 100), hash_combine(args.seed, 1));
  r.add(exact_record("pullback.theta", pb.theta_error, gate(pb.samples > 0 && pb.theta_error < 1e-10), 1e-10));
  for (std::size_t j = 0; j < pb.omega_error.size(); ++j)
    r.add(exact_record("pullback.omega[j=" + std::to_string(j + 1) + "]", pb.omega_error[j], gate(pb.omega_error[j] < 1e-10),
                       1e-10));
  r.add(exact_record("pullback.branch_shifts", pb.branch_shifts, CheckStatus::Info));
  add_conditions(r, check_conditions(p));
  r.wall_seconds = seconds_since(t0);
  return r;
}

RunReport cmd_period(const PeriodArgs& args) {
  const auto t0 = Clock::now();
  const LaurentPolynomial p = LaurentPolynomial::parse(args.poly);
  if (p.is_zero()) throw std::invalid_argument("period: zero polynomial");
  RunReport r;
  r.command = "period";
  r.seed = args.seed;
  r.parameters = {{"poly", p.to_string()}, {"budget", std::to_string(args.budget)}};
  const auto q = quadrature(args.budget, args.seed);
  const int n = p.nvars();
  bool direct = p.constant_term() > 0.0;
  if (n > 0) {
    const auto cond = check_conditions(p);
    add_conditions(r, cond);
    direct = cond.p1 && cond.p2 && cond.p3;
  }
  Estimate m;
  if (!direct) {
    m = mahler_measure(p, q);
    r.add(estimate_record("mahler_measure", m, CheckStatus::Info));
    r.add(exact_record("period", 0.0, CheckStatus::Flagged, std::nullopt, "conditions fail; period not evaluated"));
  } else {
    const auto g = gamma_period(p, q);
    m = g.mahler;
    r.add(estimate_record("period", g.total, CheckStatus::Info));
    r.add(exact_record("reference.real", g.reference.real(), CheckStatus::Info, std::nullopt, "-(2 pi i)^n m(p)"));
    r.add(exact_record("reference.imag", g.reference.imag(), CheckStatus::Info));
    r.add(estimate_record("mahler_measure", g.mahler, CheckStatus::Info));
    r.add(exact_record("period.relative_error", g.relative_error, gate(g.relative_error < 1e-4), 1e-4));
    r.add(exact_record("lambda_log_piece", std::abs(g.vanishing.value), gate(std::abs(g.vanishing.value) < 1e-5), 1e-5));
    r.add(exact_record("arg_average", std::abs(g.arg_average), gate(std::abs(g.arg_average) < 1e-5), 1e-5));
    r.add(exact_record("lift_defect", g.lift_defect, gate(g.lift_defect < 1e-5), 1e-5));
    for (std::size_t j = 0; j < g.crossing_margins.size(); ++j)
      r.add(exact_record("crossing_empty[j=" + std::to_string(j + 1) + "]", g.crossing_margins[j],
                         g.crossing_margins[j] > 0.0 ? CheckStatus::Pass : CheckStatus::Flagged, std::nullopt,
                         g.crossing_margins[j] > 0.0 ? "slice avoids (-inf,0]" : "symmetry-asserted, not numerically verified"));
  }
  if (const auto alpha = p_alpha_parameter(p); alpha && *alpha == 8.0) {
    const LValue L = l_value(EllipticCurve::e24(), 2.0, 1e4);
    CheckRecord lr = exact_record("L(E24,2)", L.value, L.flagged ? CheckStatus::Flagged : CheckStatus::Info, 1e-6,
                                  "cutoffs X and 2X, X = 10^4");
    lr.std_error = L.error;
    r.add(lr);
    const double diff = std::abs(4.0 * kPi * kPi * m.value.real() - 96.0 * L.value);
    r.add(exact_record("four_pi_squared_m_minus_96L", diff, gate(diff < 1e-4), 1e-4));
  }
  r.wall_seconds = seconds_since(t0);
  return r;
}

}  // namespace periodlab
