#include "periodlab/mahler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "periodlab/projective.hpp"
#include "periodlab/sobol.hpp"
#include "periodlab/test_forms.hpp"

namespace periodlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

int binom2(int n) { return n * (n - 1) / 2; }
double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double coefficient_scale(const LaurentPolynomial& p) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) s += std::abs(c);
  return s;
}

// Deterministic uniform stream.
struct Uniform {
  std::uint64_t seed;
  std::uint64_t counter = 0;
  double operator()(double lo, double hi) { return lo + (hi - lo) * unit_from_counter(seed, counter++); }
};

std::vector<cplx> torus_point(std::span<const double> angles) {
  std::vector<cplx> t(angles.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::polar(1.0, angles[k]);
  return t;
}

// Pattern search on a periodic box, from x with initial step h.
double refine_min(const std::function<double(std::span<const double>)>& f, std::vector<double> x, double h) {
  double best = f(x);
  while (h > 1e-12) {
    bool moved = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (double s : {h, -h}) {
        x[k] += s;
        const double v = f(x);
        if (v < best) {
          best = v;
          moved = true;
          break;
        }
        x[k] -= s;
      }
    }
    if (!moved) h *= 0.5;
  }
  return best;
}

// Minimum of f over [lo, hi]^dims: grid scan then local refinement from the best few nodes.
double grid_minimum(int dims, int grid, double lo, double hi, const std::function<double(std::span<const double>)>& f) {
  if (dims == 0) return f({});
  const double cap = std::pow(1 << 20, 1.0 / dims);
  const int g = std::max(4, std::min(grid, static_cast<int>(cap)));
  const double h = (hi - lo) / g;
  std::vector<std::pair<double, std::vector<double>>> best;
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  std::vector<double> x(static_cast<std::size_t>(dims));
  while (true) {
    for (int k = 0; k < dims; ++k) x[k] = lo + (idx[k] + 0.5) * h;
    const double v = f(x);
    if (best.size() < 4 || v < best.back().first) {
      best.emplace_back(v, x);
      std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      if (best.size() > 4) best.pop_back();
    }
    int k = 0;
    while (k < dims && ++idx[k] == g) idx[k++] = 0;
    if (k == dims) break;
  }
  double m = best.front().first;
  for (const auto& [v, start] : best) m = std::min(m, refine_min(f, start, h));
  return m;
}

// Distance from w to the cut (-inf, 0].
double cut_distance(cplx w) { return w.real() <= 0.0 ? std::abs(w.imag()) : std::abs(w); }

// Smallest |p| on the torus; grid plus refinement.
double torus_min_modulus(const LaurentPolynomial& p, int grid) {
  const int n = p.nvars();
  return grid_minimum(n, grid, 0.0, 2.0 * kPi, [&](std::span<const double> a) { return std::abs(p(torus_point(a))); });
}

// |dp/du_k| <= 2 pi sum |c e_k| on the torus in unit-cube coordinates.
std::vector<double> lipschitz(const LaurentPolynomial& p) {
  std::vector<double> L(static_cast<std::size_t>(p.nvars()), 0.0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t k = 0; k < L.size(); ++k) L[k] += 2.0 * kPi * std::abs(c * e[k]);
  return L;
}

// Integral over the unit cube of a torus log form at fixed lambda (angles 2 pi u).
Estimate torus_period(const LogForm& form, int n, cplx lambda, const QuadratureOptions& opts) {
  const IndexMask full = (IndexMask{1} << n) - 1;
  Integrand f = [&form, n, lambda, full](std::span<const double> u) -> std::optional<cplx> {
    std::vector<Jet> x;
    x.reserve(static_cast<std::size_t>(n + 1));
    for (int k = 0; k < n; ++k) x.push_back(exp(Jet::variable(u[k], n, k) * kTwoPiI));
    x.emplace_back(lambda, n);
    const auto pb = pullback(form, x);
    if (!pb) return std::nullopt;
    return pb->coeff(full);
  };
  return integrate(Domain::cube(n), f, opts);
}

}  // namespace

cplx eval_p(const LaurentPolynomial& p, std::span<const cplx> t) {
  if (static_cast<int>(t.size()) != p.nvars()) throw std::invalid_argument("eval_p: arity mismatch");
  return p(t);
}

Polynomial build_Rp(const LaurentPolynomial& p) {
  const int n = p.nvars();
  const int m = p.clearing_power();
  const int d = p.degree();
  Polynomial r(n + 2);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(n + 2, c);
    for (int k = 1; k <= n; ++k) {
      const int a = e[static_cast<std::size_t>(k - 1)] + m;
      const Polynomial eps = Polynomial::coordinate_sum(n + 2, 0, k - 1);
      const Polynomial zk = Polynomial::variable(n + 2, k);
      for (int i = 0; i < a; ++i) term *= eps;
      for (int i = 0; i < d - a; ++i) term *= zk;
    }
    r += term;
  }
  return r;
}

bool in_Y(const LaurentPolynomial& p, std::span<const cplx> z, double tol) {
  const int n = p.nvars();
  if (static_cast<int>(z.size()) != n + 2) throw std::invalid_argument("in_Y: expected n+2 coordinates");
  double scale = 1.0;
  for (cplx v : z) scale = std::max(scale, std::abs(v));
  for (cplx v : z)
    if (std::abs(v) < tol * scale) return true;
  std::vector<cplx> eps(static_cast<std::size_t>(n + 1));
  cplx s = 0.0;
  for (int k = 0; k <= n; ++k) {
    s += z[k];
    eps[k] = s;
    if (std::abs(s) < tol * scale) return true;
  }
  const int m = p.clearing_power();
  const int d = p.degree();
  cplx value = 0.0;
  double size = 0.0;
  for (const auto& [e, c] : p.terms()) {
    cplx term = c;
    for (int k = 1; k <= n; ++k) {
      const int a = e[static_cast<std::size_t>(k - 1)] + m;
      term *= std::pow(eps[k - 1], a) * std::pow(z[k], d - a);
    }
    value += term;
    size += std::abs(term);
  }
  return std::abs(value) < tol * size;
}

FiberPoint psi_factor(std::span<const cplx> z) {
  const std::size_t n = z.size() - 2;
  FiberPoint x;
  x.t.resize(n);
  cplx eps = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    eps += z[k - 1];
    x.t[k - 1] = eps / z[k];
  }
  eps += z[n];
  x.lambda = eps / z[n + 1];
  return x;
}

FiberPoint ell_map(const LaurentPolynomial& p, const FiberPoint& x) {
  return FiberPoint{x.t, p(x.t) / x.lambda};
}

std::optional<FiberPoint> psi_map(const LaurentPolynomial& p, std::span<const cplx> z) {
  if (in_Y(p, z)) return std::nullopt;
  const std::size_t n = z.size() - 2;
  FiberPoint x;
  x.t.resize(n);
  cplx eps = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    eps += z[k - 1];
    x.t[k - 1] = eps / z[k];
  }
  const cplx last = z[n + 1];
  x.lambda = last / (1.0 - last) * p(x.t);
  return x;
}

std::optional<std::vector<cplx>> phi_map(const LaurentPolynomial& p, const FiberPoint& x) {
  if (static_cast<int>(x.t.size()) != p.nvars()) throw std::invalid_argument("phi_map: arity mismatch");
  for (cplx t : x.t)
    if (t == 0.0 || std::abs(1.0 + t) < kDivisorTol * std::max(1.0, std::abs(t))) return std::nullopt;
  if (x.lambda == 0.0) return std::nullopt;
  const cplx pv = p(x.t);
  if (pv == 0.0 || std::abs(pv + x.lambda) < kDivisorTol * (std::abs(pv) + std::abs(x.lambda))) return std::nullopt;
  return simplex_coordinates<cplx>(x.t, pv, x.lambda);
}

std::optional<std::vector<Jet>> phi_map(const LaurentPolynomial& p, std::span<const Jet> x) {
  const int n = p.nvars();
  if (static_cast<int>(x.size()) != n + 1) throw std::invalid_argument("phi_map: expected n+1 jets");
  const std::span<const Jet> t = x.first(static_cast<std::size_t>(n));
  for (const Jet& v : t)
    if (v.value() == 0.0 || std::abs(1.0 + v.value()) < kDivisorTol) return std::nullopt;
  if (x[n].value() == 0.0) return std::nullopt;
  const Jet pv = p(t);
  if (pv.value() == 0.0 || std::abs(pv.value() + x[n].value()) < kDivisorTol) return std::nullopt;
  return simplex_coordinates<Jet>(t, pv, x[n]);
}

double PullbackReport::max_error() const {
  double e = theta_error;
  for (double v : omega_error) e = std::max(e, v);
  return e;
}

PullbackReport verify_pullbacks(const LaurentPolynomial& p, int samples, std::uint64_t seed) {
  const int n = p.nvars();
  const int m = n + 1;
  PullbackReport report;
  report.n = n;
  report.omega_error.assign(static_cast<std::size_t>(n + 1), 0.0);
  Uniform U{seed};
  const LogForm th = theta(n + 1, n + 1);
  std::vector<LogForm> om;
  for (int j = 1; j <= n + 1; ++j) om.push_back(omega(n + 1, j));

  // Compare an actual pullback with scalar * log_value * dlog-product on the leading mask;
  // a 2 pi i multiple of the dlog coefficient is removed and counted.
  auto compare = [&](const ParamForm& actual, cplx log_value, cplx dlog_coeff, IndexMask lead, bool& shifted,
                     std::span<const std::vector<cplx>> frame) {
    ParamForm diff(actual.params(), actual.degree());
    const auto& subsets = k_subsets(actual.params(), actual.degree());
    double err = 0.0;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      cplx expected = 0.0;
      if (subsets[i] == lead) expected = log_value * dlog_coeff;
      cplx r = actual.coeffs()[i] - expected;
      if (subsets[i] == lead && dlog_coeff != 0.0) {
        const double k = std::round((r / dlog_coeff).imag() / (2.0 * kPi));
        if (k != 0.0) {
          shifted = true;
          r -= kTwoPiI * k * dlog_coeff;
        }
      }
      diff.coeffs()[i] = r;
      err = std::max(err, std::abs(r) / std::max(1.0, std::abs(expected)));
    }
    if (actual.degree() > 0) err = std::max(err, std::abs(diff(frame.first(static_cast<std::size_t>(actual.degree())))) /
                                     std::max(1.0, std::abs(actual(frame.first(static_cast<std::size_t>(actual.degree()))))));
    return err;
  };

  int drawn = 0;
  while (report.samples < samples) {
    if (++drawn > 100 * samples + 100) break;
    FiberPoint x;
    x.t.resize(static_cast<std::size_t>(n));
    for (auto& t : x.t) t = std::polar(std::exp(U(-0.7, 0.7)), U(0.0, 2.0 * kPi));
    x.lambda = std::polar(std::exp(U(-0.7, 0.7)), U(0.0, 2.0 * kPi));
    std::vector<std::vector<cplx>> frame(static_cast<std::size_t>(m), std::vector<cplx>(static_cast<std::size_t>(m)));
    for (auto& v : frame)
      for (auto& c : v) c = cplx(U(-1.0, 1.0), U(-1.0, 1.0));
    bool ok = true;
    for (cplx t : x.t) ok = ok && std::abs(1.0 + t) > 0.05;
    const cplx pv = p(x.t);
    ok = ok && std::abs(pv) > 1e-3 * coefficient_scale(p) && std::abs(pv + x.lambda) > 0.05 * (std::abs(pv) + std::abs(x.lambda));
    if (!ok) {
      ++report.rejected;
      continue;
    }
    std::vector<Jet> jets;
    for (int k = 0; k < n; ++k) jets.push_back(Jet::variable(x.t[k], m, k));
    jets.push_back(Jet::variable(x.lambda, m, n));
    const auto z = phi_map(p, jets);
    if (!z) {
      ++report.rejected;
      continue;
    }
    bool shifted = false;
    cplx all = 1.0 / x.lambda;
    for (cplx t : x.t) all /= t;
    const auto pt = pullback(th, *z);
    if (!pt) {
      ++report.rejected;
      continue;
    }
    const IndexMask full = (IndexMask{1} << m) - 1;
    report.theta_error = std::max(report.theta_error, compare(*pt, parity(n), all, full, shifted, frame));
    for (int j = 1; j <= n + 1; ++j) {
      const auto pb = pullback(om[j - 1], *z);
      if (!pb) {
        ok = false;
        break;
      }
      cplx c = 1.0;
      for (int k = 0; k < j - 1; ++k) c /= x.t[k];
      const cplx arg = j <= n ? -x.t[j - 1] : -pv / x.lambda;
      const IndexMask lead = (IndexMask{1} << (j - 1)) - 1;
      const double e = compare(*pb, -principal_log(arg), c, lead, shifted, frame);
      report.omega_error[j - 1] = std::max(report.omega_error[j - 1], e);
    }
    if (!ok) {
      ++report.rejected;
      continue;
    }
    if (shifted) ++report.branch_shifts;
    ++report.samples;
  }
  return report;
}

ConditionReport check_conditions(const LaurentPolynomial& p, int grid) {
  const int n = p.nvars();
  const double scale = std::max(coefficient_scale(p), 1e-300);
  ConditionReport r;
  r.p1_margin = torus_min_modulus(p, grid);
  r.p1 = r.p1_margin > 1e-8 * scale;

  if (p.all_coefficients_positive()) {
    r.p2 = true;
    r.p2_from_coefficients = true;
  }
  r.p2_margin = grid_minimum(n, grid, -3.0, 3.0, [&](std::span<const double> s) {
    std::vector<cplx> t(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) t[k] = std::exp(std::clamp(s[k], -3.0, 3.0));
    return p(t).real();
  });
  if (!r.p2_from_coefficients) r.p2 = r.p2_margin > 0.0;

  r.p3 = true;
  std::vector<int> open;
  for (int j = 1; j <= n; ++j) {
    const double m = grid_minimum(j, grid, 0.0, 2.0 * kPi, [&](std::span<const double> a) {
      std::vector<cplx> t(static_cast<std::size_t>(n), cplx(1.0));
      for (int k = 0; k < j; ++k) t[k] = std::polar(1.0, a[k]);
      return cut_distance(p(t));
    });
    r.p3_margins.push_back(m);
    if (m <= 1e-8 * scale) {
      r.p3 = false;
      open.push_back(j);
    }
  }
  if (r.p3) {
    r.p3_note = "crossing sets empty: p avoids (-inf,0] on every torus slice";
  } else {
    r.p3_note = "p meets (-inf,0] on the torus slice for j =";
    for (int j : open) r.p3_note += " " + std::to_string(j);
    r.p3_note += "; symmetry-asserted, not numerically verified";
  }
  return r;
}

Estimate mahler_measure(const LaurentPolynomial& p, const QuadratureOptions& opts) {
  if (p.is_zero()) throw std::invalid_argument("mahler_measure: zero polynomial");
  const int n = p.nvars();
  if (p.is_constant() || n == 0) {
    Estimate e = Estimate::exact_value(std::log(std::abs(p.constant_term())));
    e.seed = opts.seed;
    return e;
  }
  Integrand f = [&p, n](std::span<const double> u) -> std::optional<cplx> {
    std::vector<cplx> t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) t[k] = std::polar(1.0, 2.0 * kPi * u[k]);
    const double a = std::abs(p(t));
    if (a == 0.0) return std::nullopt;
    return cplx(std::log(a));
  };
  const auto L = lipschitz(p);
  // Smooth route when the grid minimum beats the worst variation inside a cell.
  const int g = 48;
  double slack = 0.0;
  for (double v : L) slack += v * 0.5 / g;
  const double grid_min = grid_minimum(n, g, 0.0, 2.0 * kPi, [&](std::span<const double> a) { return std::abs(p(torus_point(a))); });
  if (grid_min > 2.0 * slack) {
    Estimate e = integrate(Domain::cube(n), f, opts);
    e.value = e.value.real();
    return e;
  }
  LocusIndicator locus = [&p, &L, n](const Box& b) {
    std::vector<cplx> t(static_cast<std::size_t>(n));
    double reach = 0.0;
    for (int k = 0; k < n; ++k) {
      t[k] = std::polar(1.0, kPi * (b.lo[k] + b.hi[k]));
      reach += L[k] * 0.5 * (b.hi[k] - b.lo[k]);
    }
    return std::abs(p(t)) <= reach;
  };
  Estimate e = integrate_singular(Domain::cube(n), f, locus, opts);
  e.value = e.value.real();
  return e;
}

ChainPtr torus_chain(int n, int j, double rho) {
  if (n < 0 || j < 0 || j > n + 1) throw std::out_of_range("torus_chain: index out of range");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("torus_chain: rho must lie in (0,1)");
  const int dim = 2 * j + (n + 1 - j);
  auto chain = std::make_shared<ParametrizedChain>(Ambient{Chart::Kind::Affine, n + 1}, dim, "T" + std::to_string(j));
  const double lr = std::log(rho);
  ChainMap map = [n, j, lr](std::span<const Jet> u, std::vector<Jet>& out) {
    out.clear();
    std::size_t q = 0;
    for (int k = 0; k <= n; ++k) {
      Jet e = u[q++] * cplx(-2.0 * lr) + cplx(lr);
      if (k < j) e += u[q++] * kTwoPiI;
      out.push_back(exp(e));
    }
  };
  chain->add_patch(ChainPatch{Domain::cube(dim), map, 1});
  return chain;
}

ChainPtr compact_torus_chain(int n, cplx lambda) {
  auto chain = std::make_shared<ParametrizedChain>(Ambient{Chart::Kind::Affine, n + 1}, n, "torus");
  ChainMap map = [n, lambda](std::span<const Jet> u, std::vector<Jet>& out) {
    out.clear();
    for (int k = 0; k < n; ++k) out.push_back(exp(u[k] * kTwoPiI));
    out.emplace_back(lambda, n);
  };
  chain->add_patch(ChainPatch{Domain::cube(n), map, 1});
  return chain;
}

Transform ell_transform(const LaurentPolynomial& p) {
  const int n = p.nvars();
  return Transform{"ell", Ambient{Chart::Kind::Affine, n + 1}, [p, n](std::span<const Jet> in, std::vector<Jet>& out) {
                     out.assign(in.begin(), in.end());
                     out[n] = p(in.first(static_cast<std::size_t>(n))) / in[n];
                   }};
}

LogForm beta_form(int n, int j) {
  if (j < 1 || j > n + 1) throw std::out_of_range("beta_form: index out of range");
  LogForm f(n + 1, j - 1);
  LogTerm t;
  t.scalar = -1.0;
  t.log_arg = RationalFunction(Polynomial::variable(n + 1, j - 1) * cplx(-1.0));
  for (int k = 0; k < j - 1; ++k) t.dlogs.emplace_back(Polynomial::variable(n + 1, k));
  f.add_term(std::move(t));
  return f;
}

LogForm log_ratio_form(const LaurentPolynomial& p) {
  const int n = p.nvars();
  Polynomial num(n + 1);
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> ex(e);
    ex.push_back(0);
    num.add_term(-c, ex);
  }
  LogForm f(n + 1, n);
  LogTerm t;
  t.log_arg = RationalFunction(num, Polynomial::variable(n + 1, n));
  for (int k = 0; k < n; ++k) t.dlogs.emplace_back(Polynomial::variable(n + 1, k));
  f.add_term(std::move(t));
  return f;
}

namespace {

GeometricCurrent theta_current(int n, double rho) {
  GeometricCurrent g(Ambient{Chart::Kind::Affine, n + 1});
  std::vector<RationalFunction> dl;
  for (int k = 0; k <= n; ++k) dl.emplace_back(Polynomial::variable(n + 1, k));
  g.add_term(CurrentTerm{1.0, torus_chain(n, n + 1, rho), LogForm::dlog_wedge(n + 1, dl, parity(n)), {}});
  return g;
}

void finish(IdentityReport& report) {
  report.pass = true;
  report.max_relative = 0.0;
  for (const auto& r : report.rows) {
    report.max_relative = std::max(report.max_relative, r.relative);
    report.pass = report.pass && r.pass;
  }
}

}  // namespace

RegulatorTriple build_regulator_triple(const LaurentPolynomial& p, double rho) {
  const auto cond = check_conditions(p, 32);
  if (!cond.p1) throw std::invalid_argument("build_regulator_triple: p vanishes on the torus");
  if (!cond.p2) throw std::invalid_argument("build_regulator_triple: p is not positive on the positive orthant");
  const int n = p.nvars();
  const Ambient amb{Chart::Kind::Affine, n + 1};
  RegulatorTriple r;
  r.n = n;
  r.rho = rho;
  r.simplex_scalar = parity(binom2(n)) * std::pow(kTwoPiI, n + 1);
  r.simplex = GeometricCurrent(amb);
  r.simplex.add_term(CurrentTerm{r.simplex_scalar, torus_chain(n, 0, rho), LogForm::constant(n + 1, 1.0), {}});
  r.theta = theta_current(n, rho);
  r.w = GeometricCurrent(amb);
  const Transform ell = ell_transform(p);
  for (int j = 1; j <= n; ++j) {
    const cplx c = parity(binom2(n + 1)) * parity(binom2(j)) * std::pow(kTwoPiI, n + 1 - j);
    r.w.add_term(CurrentTerm{c, torus_chain(n, j, rho), beta_form(n, j), {ell}});
  }
  r.w.add_term(CurrentTerm{-1.0, torus_chain(n, n + 1, rho), log_ratio_form(p), {}});
  return r;
}

IdentityReport verify_ell_reversal(const LaurentPolynomial& p, const VerifyOptions& opts, double rho) {
  const int n = p.nvars();
  IdentityReport report{"ell_reversal", n, 0, opts.tolerance, {}, 0.0, true};
  const Ambient amb{Chart::Kind::Affine, n + 1};
  GeometricCurrent orthant(amb);
  orthant.add_term(CurrentTerm{1.0, torus_chain(n, 0, rho), LogForm::constant(n + 1, 1.0), {}});
  GeometricCurrent image(amb);
  image.add_term(CurrentTerm{1.0, torus_chain(n, 0, rho), LogForm::constant(n + 1, 1.0), {ell_transform(p)}});
  std::vector<TestForm> suite = opts.suite;
  Uniform U{hash_combine(opts.seed, 0x656c6c)};
  if (suite.empty()) {
    for (int i = 0; i < opts.suite_size; ++i) {
      std::vector<double> c;
      for (int k = 0; k <= n; ++k) {
        c.push_back(1.0 + U(-0.2, 0.2));
        c.push_back(U(-0.1, 0.1));
      }
      suite.push_back(TestForm::random(Chart{Chart::Kind::Affine, n + 1, 0}, n + 1, c, U(0.3, 0.45),
                                       hash_combine(opts.seed, static_cast<std::uint64_t>(i))));
    }
  }
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Estimate lhs = pair(image, suite[i], opts.pairing);
    const Estimate rhs = pair(orthant, suite[i], opts.pairing);
    const std::array<cplx, 1> c{-1.0};
    const std::array<const Estimate*, 1> parts{&rhs};
    report.rows.push_back(make_row(static_cast<int>(i), lhs, c, parts, opts.tolerance));
  }
  finish(report);
  return report;
}

IdentityReport verify_theta_pairing(const LaurentPolynomial& p, const VerifyOptions& opts, double rho) {
  const int n = p.nvars();
  const int D = 2 * n + 2;
  IdentityReport report{"theta_pairing", n, n + 1, opts.tolerance, {}, 0.0, true};
  const GeometricCurrent th = theta_current(n, rho);
  std::vector<RationalFunction> dl;
  for (int k = 0; k <= n; ++k) dl.emplace_back(Polynomial::variable(n + 1, k));
  const LogForm weight = LogForm::dlog_wedge(n + 1, dl, parity(n));
  std::vector<TestForm> suite = opts.suite;
  Uniform U{hash_combine(opts.seed, 0x746874)};
  if (suite.empty()) {
    for (int i = 0; i < opts.suite_size; ++i) {
      std::vector<double> c;
      double rmin = 1e300;
      for (int k = 0; k <= n; ++k) {
        const cplx t = std::polar(U(0.6, 1.6), U(0.0, 2.0 * kPi));
        c.push_back(t.real());
        c.push_back(t.imag());
        rmin = std::min(rmin, std::abs(t));
      }
      suite.push_back(TestForm::random(Chart{Chart::Kind::Affine, n + 1, 0}, n + 1, c, 0.4 * rmin,
                                       hash_combine(opts.seed, static_cast<std::uint64_t>(i))));
    }
  }
  const std::size_t ncoef = k_subsets(D, n + 1).size();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const TestForm& phi = suite[i];
    const Estimate lhs = pair(th, phi, opts.pairing);
    const double r = phi.radius();
    const std::vector<double> ctr = phi.center();
    const double jac = std::pow(2.0 * r, D);
    Integrand f = [&, r, jac](std::span<const double> u) -> std::optional<cplx> {
      std::vector<double> x(static_cast<std::size_t>(D));
      for (int k = 0; k < D; ++k) x[k] = ctr[k] - r + 2.0 * r * u[k];
      if (!phi.in_support(x)) return cplx(0.0);
      std::vector<Jet> z;
      for (int k = 0; k <= n; ++k)
        z.push_back(Jet::variable(x[2 * k], D, 2 * k) + Jet::variable(x[2 * k + 1], D, 2 * k + 1) * cplx(0.0, 1.0));
      const auto w = pullback(weight, z);
      if (!w) return std::nullopt;
      ParamForm form(D, n + 1);
      std::vector<cplx> coeffs(ncoef);
      phi.coefficients(x, coeffs);
      std::copy(coeffs.begin(), coeffs.end(), form.coeffs().begin());
      return w->wedge_top(form) * jac;
    };
    const Estimate oracle = integrate(Domain::cube(D), f, opts.pairing.quadrature);
    const std::array<cplx, 1> c{1.0};
    const std::array<const Estimate*, 1> parts{&oracle};
    report.rows.push_back(make_row(static_cast<int>(i), lhs, c, parts, opts.tolerance));
  }
  finish(report);
  return report;
}

PeriodReport gamma_period(const LaurentPolynomial& p, const QuadratureOptions& opts) {
  const int n = p.nvars();
  PeriodReport r;
  r.n = n;
  const cplx lambda = -1.0;
  const auto cond = check_conditions(p, 64);
  r.crossing_margins = cond.p3_margins;
  r.crossings_empty = cond.p3;
  r.crossing_note = cond.p3_note;
  r.flagged = !cond.p1 || !cond.p3;

  // Cross-value on its own randomization stream.
  QuadratureOptions cross = opts;
  cross.seed = hash_combine(opts.seed, 0x6d6168);
  r.mahler = mahler_measure(p, cross);
  r.reference = -std::pow(kTwoPiI, n) * r.mahler.value;
  if (n == 0) {
    r.vanishing = Estimate::exact_value(-principal_log(-lambda));
    r.log_piece = Estimate::exact_value(-principal_log(-p.constant_term() / lambda));
    r.total = Estimate::exact_value(r.vanishing.value + r.log_piece.value);
  } else {
    const LaurentPolynomial one = LaurentPolynomial::constant(n, 1.0);
    const LogForm beta = beta_form(n, n + 1);
    r.vanishing = torus_period(beta, n, lambda, opts);
    const Estimate log_p = torus_period(log_ratio_form(p), n, lambda, opts);
    const Estimate log_one = torus_period(log_ratio_form(one), n, lambda, opts);
    {
      const std::array<cplx, 1> c{-1.0};
      const std::array<const Estimate*, 1> parts{&log_p};
      r.log_piece = Estimate::combine(c, parts);
    }
    // The constant polynomial's pieces are subtracted; its beta piece is the same integral.
    const std::array<cplx, 4> c{1.0, -1.0, -1.0, 1.0};
    const std::array<const Estimate*, 4> parts{&r.vanishing, &log_p, &r.vanishing, &log_one};
    r.total = Estimate::combine(c, parts);
    const cplx normalized = log_p.value / std::pow(kTwoPiI, n);
    r.arg_average = normalized.imag();
    const double lift = 2.0 * log_p.value.imag() / std::pow(2.0 * kPi, n + 1);
    r.lift_defect = std::abs(lift - std::round(lift));
  }
  const double ref = std::abs(r.reference);
  r.relative_error = std::abs(r.total.value - r.reference) / (ref > 0.0 ? ref : 1.0);
  return r;
}

double system_residual(const LaurentPolynomial& p, const FiberPoint& x, std::span<const cplx> z) {
  const int n = p.nvars();
  const cplx pv = p(x.t);
  const cplx last = z[n + 1];
  double worst = std::abs(last * (x.lambda + pv) - x.lambda) /
                 std::max(std::abs(last * x.lambda) + std::abs(last * pv) + std::abs(x.lambda), 1e-300);
  cplx eps = 0.0;
  for (int k = 1; k <= n; ++k) {
    eps += z[k - 1];
    const cplx tz = x.t[k - 1] * z[k];
    worst = std::max(worst, std::abs(eps - tz) / std::max(std::abs(eps) + std::abs(tz), 1e-300));
  }
  return worst;
}

EquidimensionalityReport check_equidimensionality(const LaurentPolynomial& p, int samples, std::uint64_t seed) {
  const int n = p.nvars();
  EquidimensionalityReport r;
  Uniform U{seed};
  auto random_z = [&]() {
    std::vector<cplx> z(static_cast<std::size_t>(n + 2));
    cplx s = 0.0;
    for (int k = 0; k <= n; ++k) {
      z[k] = cplx(U(-1.0, 1.0), U(-1.0, 1.0));
      s += z[k];
    }
    z[n + 1] = 1.0 - s;
    return z;
  };
  for (int i = 0; i < samples; ++i) {
    const auto z = random_z();
    const auto x = psi_map(p, z);
    if (!x) continue;
    ++r.trials;
    r.fiber_residual = std::max(r.fiber_residual, system_residual(p, *x, z));
    if (const auto back = phi_map(p, *x)) {
      double scale = 0.0, err = 0.0;
      for (int k = 0; k <= n + 1; ++k) {
        scale = std::max(scale, std::abs(z[k]));
        err = std::max(err, std::abs((*back)[k] - z[k]));
      }
      r.inverse_error = std::max(r.inverse_error, err / scale);
    }
  }
  for (int i = 0; i < samples; ++i) {
    const int face = i % (n + 2);
    auto z = random_z();
    // Zero one coordinate and move its weight to a neighbour so the sum stays 1.
    z[(face + 1) % (n + 2)] += z[face];
    z[face] = 0.0;
    ++r.face_samples;
    if (in_Y(p, z)) ++r.face_in_divisor;
    FiberPoint x;
    x.t.resize(static_cast<std::size_t>(n));
    for (auto& t : x.t) t = std::polar(std::exp(U(-1.0, 1.0)), U(0.0, 2.0 * kPi));
    x.lambda = std::polar(std::exp(U(-1.0, 1.0)), U(0.0, 2.0 * kPi));
    if (p(x.t) == 0.0) continue;
    ++r.pair_samples;
    if (system_residual(p, x, z) > 1e-8) ++r.pair_violations;
  }
  // Walk into the face z_0 = 0 and log |lambda|.
  auto z = random_z();
  for (int k = 1; k <= 8; ++k) {
    const double s = std::pow(10.0, -k);
    auto w = z;
    w[1] += w[0] - s;
    w[0] = s;
    if (const auto x = psi_map(p, w)) r.approach.emplace_back(s, std::abs(x->lambda));
  }
  r.pass = r.trials > 0 && r.fiber_residual < 1e-10 && r.face_in_divisor == r.face_samples &&
           r.pair_violations == r.pair_samples;
  return r;
}

}  // namespace periodlab
