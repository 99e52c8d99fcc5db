#include "periodlab/currents.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "periodlab/projective.hpp"
#include "periodlab/sobol.hpp"

namespace periodlab {

namespace {

constexpr cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

int binom2(int n) { return n * (n - 1) / 2; }
double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

Jet constant_jet(cplx v, int m) { return Jet(v, m); }

// Homogeneous coordinates of a polydisc patch of P^d: coordinate k is 1, the
// others are read from consecutive (Re, Im) parameter pairs starting at `offset`.
std::vector<Jet> patch_point(int d, int k, std::span<const Jet> params, std::size_t offset) {
  const int m = params.empty() ? 0 : params[0].params();
  std::vector<Jet> h;
  h.reserve(static_cast<std::size_t>(d + 1));
  std::size_t p = offset;
  for (int i = 0; i <= d; ++i) {
    if (i == k) {
      h.push_back(constant_jet(1.0, m));
    } else {
      h.push_back(params[p] + params[p + 1] * cplx(0.0, 1.0));
      p += 2;
    }
  }
  return h;
}

// Simplex coordinates (s_0, ..., s_d) from the natural parameters (s_1..s_d).
std::vector<Jet> simplex_point(int d, std::span<const Jet> params, std::size_t offset, int m) {
  std::vector<Jet> s;
  s.reserve(static_cast<std::size_t>(d + 1));
  Jet head = constant_jet(1.0, m);
  for (int i = 0; i < d; ++i) head -= params[offset + static_cast<std::size_t>(i)];
  s.push_back(head);
  for (int i = 0; i < d; ++i) s.push_back(params[offset + static_cast<std::size_t>(i)]);
  return s;
}

Domain patch_domain(int complex_dim, int simplex_dim) {
  std::vector<DomainFactor> f;
  if (complex_dim > 0) f.push_back({FactorKind::Polydisc, 2 * complex_dim});
  if (simplex_dim > 0) f.push_back({FactorKind::Simplex, simplex_dim});
  return Domain(std::move(f));
}

int term_degree(const Ambient& ambient, const CurrentTerm& t) {
  return ambient.real_dim() - t.chain->dim() + t.weight.degree();
}

// Chart coordinates (as jets in the cube parameters) of a patch point after the term's transforms.
struct PatchEval {
  std::vector<Jet> src;
  std::array<Jet, 2 * kMaxIndexDim> x;
};

bool eval_patch(const CurrentTerm& term, const ChainPatch& patch, const Chart& chart, std::span<const double> u,
                PatchEval& out) {
  const auto m = u.size();
  std::array<Jet, kMaxJetParams> params;
  patch.domain.map_jets(u, std::span<Jet>(params.data(), m));
  patch.map(std::span<const Jet>(params.data(), m), out.src);
  std::vector<Jet> cur = out.src;
  std::vector<Jet> next;
  for (const auto& t : term.transforms) {
    t.apply(cur, next);
    std::swap(cur, next);
  }
  return chart.coordinates(cur, std::span<Jet>(out.x.data(), static_cast<std::size_t>(chart.real_dim())));
}

// Integrand of weight ^ phi over one patch, on the patch's parameter cube.
Integrand patch_integrand(const CurrentTerm& term, const ChainPatch& patch, const TestForm& phi) {
  return [&term, &patch, &phi](std::span<const double> u) -> std::optional<cplx> {
    const Chart& chart = phi.chart();
    const int D = chart.real_dim();
    const int k_phi = phi.degree();
    const std::size_t ncoeff = k_subsets(D, k_phi).size();
    PatchEval ev;
    if (!eval_patch(term, patch, chart, u, ev)) return cplx(0.0);
    std::array<double, 2 * kMaxIndexDim> xv{};
    for (int i = 0; i < D; ++i) xv[static_cast<std::size_t>(i)] = ev.x[static_cast<std::size_t>(i)].value().real();
    const std::span<const double> xs(xv.data(), static_cast<std::size_t>(D));
    if (!phi.in_support(xs)) return cplx(0.0);
    std::array<cplx, 1024> coeffs{};
    phi.coefficients(xs, std::span<cplx>(coeffs.data(), ncoeff));
    const ParamForm pf = pullback_real(std::span<const cplx>(coeffs.data(), ncoeff), D, k_phi,
                                       std::span<const Jet>(ev.x.data(), static_cast<std::size_t>(D)));
    const auto w = pullback(term.weight, ev.src);
    if (!w) return std::nullopt;
    return w->wedge_top(pf);
  };
}

}  // namespace

ParametrizedChain::ParametrizedChain(Ambient ambient, int dim, std::string label)
    : ambient_(ambient), dim_(dim), label_(std::move(label)) {
  if (dim < 0 || dim > ambient.real_dim()) throw std::invalid_argument("ParametrizedChain: dimension out of range");
}

void ParametrizedChain::add_patch(ChainPatch patch) {
  if (patch.domain.dim() != dim_) throw std::invalid_argument("ParametrizedChain: patch dimension mismatch");
  if (patch.sign != 1 && patch.sign != -1) throw std::invalid_argument("ParametrizedChain: sign must be +-1");
  patches_.push_back(std::move(patch));
}

int ParametrizedChain::jacobian_rank(std::size_t patch, std::span<const double> u) const {
  const auto& p = patches_.at(patch);
  std::array<Jet, kMaxJetParams> params;
  p.domain.map_jets(u, std::span<Jet>(params.data(), static_cast<std::size_t>(dim_)));
  std::vector<Jet> z;
  p.map(std::span<const Jet>(params.data(), static_cast<std::size_t>(dim_)), z);
  // Real Jacobian of the chart coordinates in the chart of the largest coordinate.
  std::vector<Jet> w;
  if (ambient_.kind == Chart::Kind::Projective) {
    std::size_t c = 0;
    for (std::size_t i = 1; i < z.size(); ++i)
      if (std::abs(z[i].value()) > std::abs(z[c].value())) c = i;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (i != c) w.push_back(z[i] / z[c]);
  } else {
    w = z;
  }
  std::vector<std::vector<double>> rows;
  for (const auto& v : w) {
    std::vector<double> re(static_cast<std::size_t>(dim_));
    std::vector<double> im(static_cast<std::size_t>(dim_));
    for (int q = 0; q < dim_; ++q) {
      re[static_cast<std::size_t>(q)] = v.d(q).real();
      im[static_cast<std::size_t>(q)] = v.d(q).imag();
    }
    rows.push_back(std::move(re));
    rows.push_back(std::move(im));
  }
  // Gaussian elimination with a relative threshold.
  int rank = 0;
  double scale = 0.0;
  for (const auto& r : rows)
    for (double v : r) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * std::max(scale, 1e-300);
  for (int col = 0; col < dim_ && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    for (std::size_t r = piv + 1; r < rows.size(); ++r)
      if (std::abs(rows[r][static_cast<std::size_t>(col)]) > std::abs(rows[piv][static_cast<std::size_t>(col)])) piv = r;
    if (std::abs(rows[piv][static_cast<std::size_t>(col)]) <= tol) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      const double f = rows[r][static_cast<std::size_t>(col)] / pr[static_cast<std::size_t>(col)];
      for (int q = col; q < dim_; ++q) rows[r][static_cast<std::size_t>(q)] -= f * pr[static_cast<std::size_t>(q)];
    }
    ++rank;
  }
  return rank;
}

Transform face_transform(int n, int r) {
  if (n < 1 || r < 0 || r > n) throw std::out_of_range("face_transform: index out of range");
  return Transform{"iota_" + std::to_string(r), Ambient{Chart::Kind::Projective, n},
                   [r](std::span<const Jet> in, std::vector<Jet>& out) { out = face<Jet>(r, in); }};
}

void GeometricCurrent::add_term(CurrentTerm term) {
  if (!term.chain) throw std::invalid_argument("GeometricCurrent: term without chain");
  const Ambient target = term.transforms.empty() ? term.chain->ambient() : term.transforms.back().target;
  if (!(target == ambient_)) throw std::invalid_argument("GeometricCurrent: term lands in a different ambient space");
  if (term.weight.nvars() != term.chain->ambient().coordinate_count())
    throw std::invalid_argument("GeometricCurrent: weight coordinates do not match the chain");
  const int deg = term_degree(ambient_, term);
  if (degree_ >= 0 && deg != degree_) throw std::invalid_argument("GeometricCurrent: mixed degrees");
  degree_ = deg;
  terms_.push_back(std::move(term));
}

GeometricCurrent& GeometricCurrent::operator*=(cplx c) {
  for (auto& t : terms_) t.scalar *= c;
  return *this;
}

GeometricCurrent& GeometricCurrent::operator+=(const GeometricCurrent& o) {
  if (!(o.ambient_ == ambient_)) throw std::invalid_argument("GeometricCurrent: sum over different ambient spaces");
  for (const auto& t : o.terms_) add_term(t);
  return *this;
}

Estimate pair(const GeometricCurrent& T, const TestForm& phi, const PairOptions& opts) {
  const Chart& chart = phi.chart();
  if (chart.kind != T.ambient().kind || chart.n != T.ambient().n)
    throw std::invalid_argument("pair: test form lives on a different space");
  if (T.is_zero()) return Estimate::exact_value(0.0);
  if (T.degree() + phi.degree() != T.ambient().real_dim())
    throw std::invalid_argument("pair: degrees of current and test form do not add up to the dimension");
  if (phi.is_zero()) return Estimate::exact_value(0.0);
  struct Job {
    Integrand f;
    int dim;
    cplx coeff;
    std::uint64_t stream;
    AdaptiveGrid grid{0, 1};
    double spread = 0.0;
  };
  std::vector<Job> jobs;
  std::uint64_t stream = 0;
  for (const auto& term : T.terms())
    for (const auto& patch : term.chain->patches())
      jobs.push_back(Job{patch_integrand(term, patch, phi), patch.domain.dim(), term.scalar * static_cast<double>(patch.sign),
                         hash_combine(opts.quadrature.seed, stream++)});

  // Pilot grids, then the total budget split in proportion to |coeff| * spread.
  double weight_sum = 0.0;
  for (auto& job : jobs) {
    if (opts.adapt && job.dim > 0) job.grid = adapt_grid(job.f, job.dim, job.stream, opts.grid, &job.spread);
    else job.grid = AdaptiveGrid(job.dim, 1);
    weight_sum += std::abs(job.coeff) * job.spread;
  }
  const double total = static_cast<double>(opts.quadrature.budget) * static_cast<double>(jobs.size());
  const auto floor_budget = std::max<std::uint64_t>(opts.quadrature.budget / 8, 1);

  std::vector<Estimate> parts;
  std::vector<cplx> coeffs;
  parts.reserve(jobs.size());
  for (const auto& job : jobs) {
    QuadratureOptions q = opts.quadrature;
    q.seed = job.stream;
    if (opts.allocate && weight_sum > 0.0) {
      const double share = total * std::abs(job.coeff) * job.spread / weight_sum;
      q.budget = std::max(floor_budget, static_cast<std::uint64_t>(share));
    }
    parts.push_back(integrate_on_grid(job.grid, job.f, q));
    coeffs.push_back(job.coeff);
  }
  std::vector<const Estimate*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return Estimate::combine(coeffs, ptrs);
}

Estimate boundary_pair(const GeometricCurrent& T, const TestForm& phi, const PairOptions& opts) {
  if (T.is_zero()) return Estimate::exact_value(0.0);
  const cplx sign = parity(T.degree() + 1);
  const Estimate e = pair(T, phi.d(), opts);
  const Estimate* p = &e;
  return Estimate::combine(std::span<const cplx>(&sign, 1), std::span<const Estimate* const>(&p, 1));
}

GeometricCurrent tau(int k, const GeometricCurrent& T) {
  if (T.ambient().kind != Chart::Kind::Projective) throw std::invalid_argument("tau: needs a projective current");
  const int n = T.ambient().n + 1;
  if (k < 0 || k > n) throw std::out_of_range("tau: index out of range");
  GeometricCurrent out(Ambient{Chart::Kind::Projective, n});
  for (int r = 0; r <= k; ++r) {
    for (auto term : T.terms()) {
      term.scalar *= parity(r);
      term.transforms.push_back(face_transform(n, r));
      out.add_term(std::move(term));
    }
  }
  return out;
}

ChainPtr projective_space_chain(int n) {
  auto chain = std::make_shared<ParametrizedChain>(Ambient{Chart::Kind::Projective, n}, 2 * n, "P^" + std::to_string(n));
  for (int k = 0; k <= n; ++k) {
    chain->add_patch(ChainPatch{patch_domain(n, 0),
                                [n, k](std::span<const Jet> p, std::vector<Jet>& out) { out = patch_point(n, k, p, 0); }, 1});
  }
  return chain;
}

ChainPtr r_chain(int n, int j) {
  if (j < 0 || j > n) throw std::out_of_range("r_chain: j out of range");
  auto chain = std::make_shared<ParametrizedChain>(Ambient{Chart::Kind::Projective, n}, n + j,
                                                   "R_" + std::to_string(n) + "," + std::to_string(j));
  for (int k = 0; k <= j; ++k) {
    chain->add_patch(ChainPatch{patch_domain(j, n - j),
                                [n, j, k](std::span<const Jet> p, std::vector<Jet>& out) {
                                  const int m = static_cast<int>(p.size());
                                  const auto h = patch_point(j, k, p, 0);
                                  const auto s = simplex_point(n - j, p, static_cast<std::size_t>(2 * j), m);
                                  out = phi_nj<Jet>(n, j, std::span<const Jet>(h.data(), static_cast<std::size_t>(j)), h.back(), s);
                                },
                                1});
  }
  return chain;
}

ChainPtr r_face_chain(int n, int j) {
  if (j < 0 || j >= n) throw std::out_of_range("r_face_chain: j out of range");
  auto chain = std::make_shared<ParametrizedChain>(Ambient{Chart::Kind::Projective, n}, n + j - 1,
                                                   "dR_" + std::to_string(n) + "," + std::to_string(j));
  for (int k = 0; k <= j; ++k) {
    chain->add_patch(ChainPatch{patch_domain(j, n - j - 1),
                                [n, j, k](std::span<const Jet> p, std::vector<Jet>& out) {
                                  const int m = static_cast<int>(p.size());
                                  const auto h = patch_point(j, k, p, 0);
                                  auto s = simplex_point(n - j - 1, p, static_cast<std::size_t>(2 * j), m);
                                  s.insert(s.begin(), constant_jet(0.0, m));
                                  out = phi_nj<Jet>(n, j, std::span<const Jet>(h.data(), static_cast<std::size_t>(j)), h.back(), s);
                                },
                                1});
  }
  return chain;
}

ChainPtr s_chain(int n, int j) {
  if (j < 1 || j > n) throw std::out_of_range("s_chain: j out of range");
  auto chain = std::make_shared<ParametrizedChain>(Ambient{Chart::Kind::Projective, n}, 2 * n - 1, "S_" + std::to_string(j));
  for (int k = 0; k < n; ++k) {
    chain->add_patch(ChainPatch{patch_domain(n - 1, 1),
                                [n, j, k](std::span<const Jet> p, std::vector<Jet>& out) {
                                  const int m = static_cast<int>(p.size());
                                  // h = [u_0 .. u_{j-2} : lambda : w_{j+1} .. w_n]
                                  const auto h = patch_point(n - 1, k, p, 0);
                                  const Jet& s1 = p[static_cast<std::size_t>(2 * (n - 1))];
                                  const Jet s0 = constant_jet(1.0, m) - s1;
                                  const Jet& lambda = h[static_cast<std::size_t>(j - 1)];
                                  out.clear();
                                  Jet eps = constant_jet(0.0, m);
                                  for (int i = 0; i < j - 1; ++i) {
                                    out.push_back(h[static_cast<std::size_t>(i)]);
                                    eps += h[static_cast<std::size_t>(i)];
                                  }
                                  out.push_back(s0 * lambda - eps);
                                  out.push_back(s1 * lambda);
                                  for (int i = j; i < n; ++i) out.push_back(h[static_cast<std::size_t>(i)]);
                                },
                                1});
  }
  return chain;
}

FundamentalTriple build_fundamental_triple(int n) {
  if (n < 0 || n > 4) throw std::out_of_range("build_fundamental_triple: n out of range");
  const Ambient amb{Chart::Kind::Projective, n};
  FundamentalTriple t{GeometricCurrent(amb), GeometricCurrent(amb), GeometricCurrent(amb)};
  t.theta.add_term(CurrentTerm{1.0, projective_space_chain(n), theta(n, n), {}});
  t.simplex.add_term(CurrentTerm{1.0, r_chain(n, 0), LogForm::constant(n + 1, 1.0), {}});
  for (int j = 1; j <= n; ++j) {
    const cplx c = parity(binom2(n)) * parity(binom2(j)) * std::pow(kTwoPiI, n - j);
    t.w.add_term(CurrentTerm{c, r_chain(n, j), omega(n, j), {}});
  }
  return t;
}

ResidualRow make_row(int form, const Estimate& lhs, std::span<const cplx> coeffs, std::span<const Estimate* const> rhs_parts,
                     double tolerance) {
  ResidualRow row;
  row.form = form;
  std::vector<cplx> c{1.0};
  std::vector<const Estimate*> parts{&lhs};
  double scale = 0.0;
  cplx rhs = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    c.push_back(-coeffs[i]);
    parts.push_back(rhs_parts[i]);
    const cplx v = coeffs[i] * rhs_parts[i]->value;
    rhs += v;
    scale = std::max(scale, std::abs(v));
  }
  const Estimate res = Estimate::combine(c, parts);
  row.lhs = lhs.value;
  row.rhs = rhs;
  row.residual = res.value;
  row.std_error = res.std_error;
  row.scale = scale;
  const double mag = std::abs(res.value);
  row.relative = scale > 0.0 ? mag / scale : mag;
  row.within_tolerance = row.relative <= tolerance;
  const double floor = 1e-12 * std::max({scale, std::abs(lhs.value), 1e-300});
  row.within_noise = mag <= 3.0 * res.std_error + floor;
  row.flagged = res.flagged || !res.converged;
  row.pass = row.within_tolerance && row.within_noise;
  return row;
}

namespace {

std::vector<TestForm> suite_for(int n, int degree, const VerifyOptions& opts) {
  if (!opts.suite.empty()) {
    for (const auto& f : opts.suite)
      if (f.degree() != degree || f.chart().n != n) throw std::invalid_argument("verify: supplied test form has the wrong shape");
    return opts.suite;
  }
  return make_projective_suite(n, degree, opts.suite_size, opts.seed);
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

IdentityReport verify_fundamental_relation(int n, const VerifyOptions& opts) {
  if (n < 1 || n > 3) throw std::out_of_range("verify_fundamental_relation: n out of range");
  IdentityReport report{"fundamental_relation", n, n, opts.tolerance, {}, 0.0, true};
  const auto triple = build_fundamental_triple(n);
  const auto lower = build_fundamental_triple(n - 1);
  const GeometricCurrent tw = tau(n, lower.w);
  const cplx c_delta = -parity(binom2(n)) * std::pow(-kTwoPiI, n);
  const auto suite = suite_for(n, n, opts);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Estimate lhs = boundary_pair(triple.w, suite[i], opts.pairing);
    const Estimate th = pair(triple.theta, suite[i], opts.pairing);
    const Estimate de = pair(triple.simplex, suite[i], opts.pairing);
    const Estimate tv = pair(tw, suite[i], opts.pairing);
    const std::array<cplx, 3> c{1.0, c_delta, kTwoPiI};
    const std::array<const Estimate*, 3> p{&th, &de, &tv};
    report.rows.push_back(make_row(static_cast<int>(i), lhs, c, p, opts.tolerance));
  }
  finish(report);
  return report;
}

IdentityReport verify_d_theta(int n, int j, const VerifyOptions& opts) {
  if (j < 1 || j > n || n > 3) throw std::out_of_range("verify_d_theta: indices out of range");
  IdentityReport report{"d_theta", n, j, opts.tolerance, {}, 0.0, true};
  GeometricCurrent th(Ambient{Chart::Kind::Projective, n});
  th.add_term(CurrentTerm{1.0, projective_space_chain(n), theta(n, j), {}});
  GeometricCurrent lower(Ambient{Chart::Kind::Projective, n - 1});
  lower.add_term(CurrentTerm{1.0, projective_space_chain(n - 1), theta(n - 1, j - 1), {}});
  const GeometricCurrent rhs = tau(j, lower);
  const auto suite = suite_for(n, 2 * n - j - 1, opts);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Estimate lhs = boundary_pair(th, suite[i], opts.pairing);
    const Estimate r = pair(rhs, suite[i], opts.pairing);
    const std::array<cplx, 1> c{-kTwoPiI};
    const std::array<const Estimate*, 1> p{&r};
    report.rows.push_back(make_row(static_cast<int>(i), lhs, c, p, opts.tolerance));
  }
  finish(report);
  return report;
}

IdentityReport verify_boundary_R(int n, int j, const VerifyOptions& opts) {
  if (j < 0 || j >= n || n > 3) throw std::out_of_range("verify_boundary_R: indices out of range");
  IdentityReport report{"boundary_R", n, j, opts.tolerance, {}, 0.0, true};
  const Ambient amb{Chart::Kind::Projective, n};
  GeometricCurrent r(amb);
  r.add_term(CurrentTerm{1.0, r_chain(n, j), LogForm::constant(n + 1, 1.0), {}});
  GeometricCurrent face_part(amb);
  face_part.add_term(CurrentTerm{1.0, r_face_chain(n, j), LogForm::constant(n + 1, 1.0), {}});
  GeometricCurrent side(amb);
  const auto lower = r_chain(n - 1, j);
  for (int k = j + 1; k <= n; ++k)
    side.add_term(CurrentTerm{parity(k), lower, LogForm::constant(n, 1.0), {face_transform(n, k)}});
  const auto suite = suite_for(n, n + j - 1, opts);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Estimate lhs = boundary_pair(r, suite[i], opts.pairing);
    const Estimate a = pair(face_part, suite[i], opts.pairing);
    const Estimate b = pair(side, suite[i], opts.pairing);
    const std::array<cplx, 2> c{parity(n - j - 1), -parity(n)};
    const std::array<const Estimate*, 2> p{&a, &b};
    report.rows.push_back(make_row(static_cast<int>(i), lhs, c, p, opts.tolerance));
  }
  finish(report);
  return report;
}

IdentityReport verify_d_omega(int n, int j, const VerifyOptions& opts) {
  if (j < 1 || j > n || n > 2) throw std::out_of_range("verify_d_omega: indices out of range");
  IdentityReport report{"d_omega", n, j, opts.tolerance, {}, 0.0, true};
  const Ambient amb{Chart::Kind::Projective, n};
  const auto whole = projective_space_chain(n);
  GeometricCurrent om(amb);
  om.add_term(CurrentTerm{1.0, whole, omega(n, j), {}});
  GeometricCurrent th(amb);
  th.add_term(CurrentTerm{1.0, whole, theta(n, j), {}});
  GeometricCurrent sj(amb);
  sj.add_term(CurrentTerm{1.0, s_chain(n, j), theta(n, j - 1), {}});
  GeometricCurrent lower(Ambient{Chart::Kind::Projective, n - 1});
  if (j >= 2) lower.add_term(CurrentTerm{1.0, projective_space_chain(n - 1), omega(n - 1, j - 1), {}});
  const GeometricCurrent tl = tau(j - 1, lower);
  const auto suite = suite_for(n, 2 * n - j, opts);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Estimate lhs = boundary_pair(om, suite[i], opts.pairing);
    const Estimate a = pair(th, suite[i], opts.pairing);
    const Estimate b = pair(sj, suite[i], opts.pairing);
    const Estimate c3 = pair(tl, suite[i], opts.pairing);
    const std::array<cplx, 3> c{1.0, -parity(j) * kTwoPiI, kTwoPiI};
    const std::array<const Estimate*, 3> p{&a, &b, &c3};
    report.rows.push_back(make_row(static_cast<int>(i), lhs, c, p, opts.tolerance));
  }
  finish(report);
  return report;
}

}  // namespace periodlab
