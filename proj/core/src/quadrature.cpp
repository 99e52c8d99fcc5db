#include "periodlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "periodlab/sobol.hpp"

namespace periodlab {

namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr int kMaxResampleAttempts = 32;

struct ChunkResult {
  cplx sum{0.0, 0.0};
  std::uint64_t resampled = 0;
  std::uint64_t failed = 0;
};

struct Stratum {
  Box box;
  std::uint64_t id = 0;
};

std::uint64_t floor_pow2(std::uint64_t n) { return n == 0 ? 1 : std::bit_floor(n); }

// Runs `body(chunk_index)` for all chunks, in parallel when workers are available.
template <class Body>
void for_each_chunk(std::uint64_t chunks, Body&& body) {
  const auto workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(worker_count()), chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto loop = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) body(c);
  };
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(loop);
  loop();
}

// Sum over n scrambled Sobol points of `eval` on the box, for one randomization.
template <class Eval>
ChunkResult sample_box(const Box& box, std::uint64_t n, std::uint64_t stream, const Eval& eval) {
  const int d = static_cast<int>(box.lo.size());
  if (d == 0) {
    ChunkResult r;
    const auto v = eval(std::span<const double>{});
    if (v) r.sum = *v * static_cast<double>(n);
    else r.failed = n;
    return r;
  }
  const SobolSequence seq(d);
  std::vector<std::uint32_t> seeds(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) seeds[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(hash_combine(stream, static_cast<std::uint64_t>(k)));

  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<ChunkResult> results(chunks);
  for_each_chunk(chunks, [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    std::vector<std::uint32_t> bits(static_cast<std::size_t>(d));
    std::vector<double> u(static_cast<std::size_t>(d));
    seq.point_bits(begin, bits);
    ChunkResult acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      if (i > begin) seq.next_bits(i - 1, bits);
      for (int k = 0; k < d; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        u[kk] = box.lo[kk] + (box.hi[kk] - box.lo[kk]) * to_unit(owen_scramble(bits[kk], seeds[kk]));
      }
      auto v = eval(std::span<const double>(u));
      for (int attempt = 1; !v && attempt <= kMaxResampleAttempts; ++attempt) {
        const std::uint64_t key = hash_combine(hash_combine(stream, i), static_cast<std::uint64_t>(attempt));
        for (int k = 0; k < d; ++k) {
          const auto kk = static_cast<std::size_t>(k);
          const double r = (static_cast<double>(splitmix64(key + static_cast<std::uint64_t>(k)) >> 11) + 0.5) * 0x1p-53;
          u[kk] = box.lo[kk] + (box.hi[kk] - box.lo[kk]) * r;
        }
        v = eval(std::span<const double>(u));
        ++acc.resampled;
      }
      if (v) acc.sum += *v;
      else ++acc.failed;
    }
    results[c] = acc;
  });
  ChunkResult total;
  for (const auto& r : results) {
    total.sum += r.sum;
    total.resampled += r.resampled;
    total.failed += r.failed;
  }
  return total;
}

Box unit_box(int d) {
  return Box{std::vector<double>(static_cast<std::size_t>(d), 0.0), std::vector<double>(static_cast<std::size_t>(d), 1.0)};
}

Estimate run(const Domain& domain, const Integrand& f, const std::vector<Stratum>& strata,
             const std::vector<std::uint64_t>& counts, const QuadratureOptions& opts) {
  if (opts.randomizations < 2) throw std::invalid_argument("integrate: at least two randomizations required");
  const int d = domain.dim();
  auto eval = [&](std::span<const double> u) -> std::optional<cplx> {
    std::array<double, kMaxJetParams> x{};
    const double jac = domain.map(u, std::span<double>(x.data(), static_cast<std::size_t>(d)));
    const auto v = f(std::span<const double>(x.data(), static_cast<std::size_t>(d)));
    if (!v) return std::nullopt;
    return *v * jac;
  };
  Estimate est;
  est.seed = opts.seed;
  est.replicates.assign(static_cast<std::size_t>(opts.randomizations), cplx(0.0));
  std::uint64_t failed = 0;
  for (int r = 0; r < opts.randomizations; ++r) {
    const std::uint64_t rep_stream = hash_combine(opts.seed, static_cast<std::uint64_t>(r));
    for (std::size_t s = 0; s < strata.size(); ++s) {
      const std::uint64_t stream = hash_combine(rep_stream, strata[s].id);
      const ChunkResult cr = sample_box(strata[s].box, counts[s], stream, eval);
      est.replicates[static_cast<std::size_t>(r)] += cr.sum * (strata[s].box.volume() / static_cast<double>(counts[s]));
      est.samples += counts[s];
      est.resampled += cr.resampled;
      failed += cr.failed;
    }
  }
  est.refresh_error();
  est.flagged = failed > 0 || static_cast<double>(est.resampled) > 0.01 * static_cast<double>(est.samples);
  est.converged = opts.target_error <= 0.0 || est.std_error <= opts.target_error;
  return est;
}

}  // namespace

int worker_count() {
  static const int count = [] {
    if (const char* env = std::getenv("PERIODLAB_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  }();
  return count;
}

Domain::Domain(std::vector<DomainFactor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.dim < 0) throw std::invalid_argument("Domain: negative factor dimension");
    if (f.kind == FactorKind::Polydisc && f.dim % 2 != 0) throw std::invalid_argument("Domain: polydisc needs an even parameter count");
    dim_ += f.dim;
  }
  if (dim_ > kMaxJetParams) throw std::invalid_argument("Domain: dimension too large");
}

double Domain::volume() const {
  double v = 1.0;
  for (const auto& f : factors_) {
    switch (f.kind) {
      case FactorKind::Cube: break;
      case FactorKind::Simplex: v /= std::tgamma(f.dim + 1.0); break;
      case FactorKind::Torus: v *= std::pow(2.0 * std::numbers::pi, f.dim); break;
      case FactorKind::Polydisc: v *= std::pow(std::numbers::pi, f.dim / 2); break;
    }
  }
  return v;
}

double Domain::map(std::span<const double> u, std::span<double> x) const {
  double jac = 1.0;
  std::size_t off = 0;
  for (const auto& f : factors_) {
    const auto d = static_cast<std::size_t>(f.dim);
    switch (f.kind) {
      case FactorKind::Cube:
        for (std::size_t i = 0; i < d; ++i) x[off + i] = u[off + i];
        break;
      case FactorKind::Simplex: {
        double tail = 1.0;  // prod_{i>k} (1 - t_i)
        for (std::size_t k = d; k-- > 0;) {
          x[off + k] = u[off + k] * tail;
          jac *= tail;
          tail *= 1.0 - u[off + k];
        }
        break;
      }
      case FactorKind::Torus:
        for (std::size_t i = 0; i < d; ++i) x[off + i] = 2.0 * std::numbers::pi * u[off + i];
        jac *= std::pow(2.0 * std::numbers::pi, f.dim);
        break;
      case FactorKind::Polydisc:
        for (std::size_t i = 0; i < d; i += 2) {
          const double r = u[off + i];
          const double a = 2.0 * std::numbers::pi * u[off + i + 1];
          x[off + i] = r * std::cos(a);
          x[off + i + 1] = r * std::sin(a);
          jac *= 2.0 * std::numbers::pi * r;
        }
        break;
    }
    off += d;
  }
  return jac;
}

void Domain::map_jets(std::span<const double> u, std::span<Jet> x) const {
  std::size_t off = 0;
  for (const auto& f : factors_) {
    const auto d = static_cast<std::size_t>(f.dim);
    switch (f.kind) {
      case FactorKind::Cube:
        for (std::size_t i = 0; i < d; ++i) x[off + i] = Jet::variable(u[off + i], dim_, static_cast<int>(off + i));
        break;
      case FactorKind::Simplex: {
        Jet tail(cplx(1.0), dim_);
        for (std::size_t k = d; k-- > 0;) {
          const Jet t = Jet::variable(u[off + k], dim_, static_cast<int>(off + k));
          x[off + k] = t * tail;
          tail *= Jet(cplx(1.0), dim_) - t;
        }
        break;
      }
      case FactorKind::Torus:
        for (std::size_t i = 0; i < d; ++i)
          x[off + i] = Jet::variable(u[off + i], dim_, static_cast<int>(off + i)) * cplx(2.0 * std::numbers::pi);
        break;
      case FactorKind::Polydisc:
        for (std::size_t i = 0; i < d; i += 2) {
          const double r = u[off + i];
          const double a = 2.0 * std::numbers::pi * u[off + i + 1];
          const double c = std::cos(a);
          const double s = std::sin(a);
          Jet xr(cplx(r * c), dim_);
          Jet yr(cplx(r * s), dim_);
          xr.d(static_cast<int>(off + i)) = c;
          xr.d(static_cast<int>(off + i + 1)) = -2.0 * std::numbers::pi * r * s;
          yr.d(static_cast<int>(off + i)) = s;
          yr.d(static_cast<int>(off + i + 1)) = 2.0 * std::numbers::pi * r * c;
          x[off + i] = xr;
          x[off + i + 1] = yr;
        }
        break;
    }
    off += d;
  }
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

Estimate Estimate::exact_value(cplx v) {
  Estimate e;
  e.value = v;
  e.exact = true;
  return e;
}

void Estimate::refresh_error() {
  if (replicates.empty()) {
    std_error = 0.0;
    return;
  }
  cplx mean = 0.0;
  for (const auto& r : replicates) mean += r;
  mean /= static_cast<double>(replicates.size());
  value = mean;
  if (replicates.size() < 2) {
    std_error = 0.0;
    return;
  }
  double ss = 0.0;
  for (const auto& r : replicates) ss += std::norm(r - mean);
  const double k = static_cast<double>(replicates.size());
  std_error = std::sqrt(ss / (k - 1.0) / k);
}

Estimate Estimate::combine(std::span<const cplx> coeffs, std::span<const Estimate* const> parts) {
  if (coeffs.size() != parts.size()) throw std::invalid_argument("Estimate::combine: size mismatch");
  Estimate out;
  out.exact = true;
  std::size_t reps = 0;
  for (const Estimate* p : parts) {
    if (!p->exact) {
      if (reps != 0 && p->replicates.size() != reps) throw std::invalid_argument("Estimate::combine: replicate counts differ");
      reps = p->replicates.size();
    }
  }
  out.replicates.assign(reps, cplx(0.0));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Estimate& p = *parts[i];
    out.samples += p.samples;
    out.resampled += p.resampled;
    out.flagged = out.flagged || p.flagged;
    out.converged = out.converged && p.converged;
    out.seed = p.seed;
    if (p.exact) {
      for (auto& r : out.replicates) r += coeffs[i] * p.value;
      out.value += coeffs[i] * p.value;
    } else {
      out.exact = false;
      for (std::size_t r = 0; r < reps; ++r) out.replicates[r] += coeffs[i] * p.replicates[r];
    }
  }
  if (!out.exact) out.refresh_error();
  else out.replicates.clear();
  return out;
}

Estimate integrate(const Domain& domain, const Integrand& f, const QuadratureOptions& opts) {
  const auto k = static_cast<std::uint64_t>(std::max(opts.randomizations, 1));
  const std::uint64_t n = floor_pow2(std::max<std::uint64_t>(opts.budget / k, 1));
  return run(domain, f, {Stratum{unit_box(domain.dim()), 0}}, {n}, opts);
}

Estimate integrate_singular(const Domain& domain, const Integrand& f, const LocusIndicator& locus,
                            const QuadratureOptions& opts, const SingularOptions& sopts) {
  const int d = domain.dim();
  const auto k = static_cast<std::uint64_t>(std::max(opts.randomizations, 1));
  const std::uint64_t per_rep = std::max<std::uint64_t>(opts.budget / k, 1);
  const std::uint64_t max_leaves = std::max<std::uint64_t>(per_rep / (4 * sopts.min_samples), 1);

  // Breadth-first bisection of flagged boxes along their longest side.
  std::vector<Stratum> leaves;
  std::deque<std::pair<Stratum, int>> queue;
  queue.push_back({Stratum{unit_box(d), 1}, 0});
  while (!queue.empty()) {
    auto [s, depth] = queue.front();
    queue.pop_front();
    const bool room = leaves.size() + queue.size() + 2 <= max_leaves;
    if (d > 0 && depth < sopts.max_depth && room && locus(s.box)) {
      std::size_t axis = 0;
      for (std::size_t i = 1; i < s.box.lo.size(); ++i)
        if (s.box.hi[i] - s.box.lo[i] > s.box.hi[axis] - s.box.lo[axis]) axis = i;
      const double mid = 0.5 * (s.box.lo[axis] + s.box.hi[axis]);
      Stratum a = s;
      Stratum b = s;
      a.box.hi[axis] = mid;
      b.box.lo[axis] = mid;
      a.id = 2 * s.id;
      b.id = 2 * s.id + 1;
      queue.push_back({a, depth + 1});
      queue.push_back({b, depth + 1});
    } else {
      leaves.push_back(s);
    }
  }
  std::sort(leaves.begin(), leaves.end(), [](const Stratum& a, const Stratum& b) { return a.id < b.id; });
  std::vector<std::uint64_t> counts;
  counts.reserve(leaves.size());
  for (const auto& s : leaves) {
    const auto share = static_cast<std::uint64_t>(static_cast<double>(per_rep) * s.box.volume());
    counts.push_back(floor_pow2(std::max(share, sopts.min_samples)));
  }
  return run(domain, f, leaves, counts, opts);
}

AdaptiveGrid::AdaptiveGrid(int dim, int bins) : dim_(dim), bins_(bins) {
  if (dim < 0 || dim > SobolSequence::kMaxDim) throw std::invalid_argument("AdaptiveGrid: dimension out of range");
  if (bins < 1) throw std::invalid_argument("AdaptiveGrid: need at least one bin");
  std::vector<double> uniform(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) uniform[static_cast<std::size_t>(i)] = static_cast<double>(i) / bins;
  edges_.assign(static_cast<std::size_t>(dim), uniform);
}

double AdaptiveGrid::warp(std::span<const double> u, std::span<double> x) const {
  double jac = 1.0;
  for (int k = 0; k < dim_; ++k) {
    const auto& e = edges_[static_cast<std::size_t>(k)];
    const double t = u[static_cast<std::size_t>(k)] * bins_;
    const int b = std::clamp(static_cast<int>(t), 0, bins_ - 1);
    const auto bb = static_cast<std::size_t>(b);
    const double width = e[bb + 1] - e[bb];
    x[static_cast<std::size_t>(k)] = e[bb] + (t - b) * width;
    jac *= width * bins_;
  }
  return jac;
}

double AdaptiveGrid::refine(const Integrand& f, std::uint64_t samples, std::uint64_t seed) {
  if (dim_ == 0 || samples == 0) return 0.0;
  const auto nb = static_cast<std::size_t>(bins_);
  std::vector<std::vector<double>> weight(static_cast<std::size_t>(dim_), std::vector<double>(nb, 0.0));
  const SobolSequence seq(dim_);
  std::vector<std::uint32_t> seeds(static_cast<std::size_t>(dim_));
  for (int k = 0; k < dim_; ++k) seeds[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(hash_combine(seed, static_cast<std::uint64_t>(k)));
  std::vector<std::uint32_t> bits(static_cast<std::size_t>(dim_));
  std::vector<double> u(static_cast<std::size_t>(dim_));
  std::vector<double> x(static_cast<std::size_t>(dim_));
  std::vector<std::size_t> bin(static_cast<std::size_t>(dim_));
  seq.point_bits(0, bits);
  double total = 0.0;
  cplx mean{0.0, 0.0};
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (i > 0) seq.next_bits(i - 1, bits);
    for (std::size_t k = 0; k < u.size(); ++k) {
      u[k] = to_unit(owen_scramble(bits[k], seeds[k]));
      bin[k] = std::min(static_cast<std::size_t>(u[k] * bins_), nb - 1);
    }
    const double jac = warp(u, x);
    const auto v = f(std::span<const double>(x));
    if (!v) continue;
    const double w = std::norm(*v * jac);
    if (!std::isfinite(w)) continue;
    total += w;
    mean += *v * jac;
    for (std::size_t k = 0; k < u.size(); ++k) weight[k][bin[k]] += w;
  }
  if (!(total > 0.0)) return 0.0;
  const auto ns = static_cast<double>(samples);
  const double spread = std::sqrt(std::max(total / ns - std::norm(mean / ns), 0.0));

  for (std::size_t k = 0; k < weight.size(); ++k) {
    // Smooth, then compress the dynamic range before redistributing the edges.
    const auto& raw = weight[k];
    std::vector<double> d(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      double acc = raw[b];
      int cnt = 1;
      if (b > 0) { acc += raw[b - 1]; ++cnt; }
      if (b + 1 < nb) { acc += raw[b + 1]; ++cnt; }
      d[b] = acc / cnt;
    }
    double sum = 0.0;
    for (double v : d) sum += v;
    if (!(sum > 0.0)) continue;
    constexpr double kAlpha = 1.5;
    std::vector<double> r(nb, 0.0);
    double rsum = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const double q = d[b] / sum;
      if (q > 0.0 && q < 1.0) r[b] = std::pow((q - 1.0) / std::log(q), kAlpha);
      else if (q >= 1.0) r[b] = 1.0;
      rsum += r[b];
    }
    const auto& old = edges_[k];
    std::vector<double> fresh(nb + 1);
    fresh[0] = 0.0;
    fresh[nb] = 1.0;
    const double step = rsum / bins_;
    double need = step;
    std::size_t b = 0;
    double acc = 0.0;  // weight consumed up to the left edge of bin b
    for (std::size_t e = 1; e < nb; ++e) {
      while (b < nb && acc + r[b] < need) acc += r[b++];
      if (b >= nb) {
        fresh[e] = 1.0;
      } else {
        const double frac = r[b] > 0.0 ? (need - acc) / r[b] : 0.0;
        fresh[e] = old[b] + frac * (old[b + 1] - old[b]);
      }
      need += step;
    }
    for (std::size_t e = 1; e <= nb; ++e) fresh[e] = std::max(fresh[e], fresh[e - 1]);
    edges_[k] = std::move(fresh);
  }
  return spread;
}

AdaptiveGrid adapt_grid(const Integrand& f, int dim, std::uint64_t seed, const AdaptiveOptions& aopts, double* spread) {
  AdaptiveGrid grid(dim, aopts.bins);
  const std::uint64_t pilot_seed = hash_combine(seed, 0x61646170ULL);
  double last = 0.0;
  for (int r = 0; r < aopts.rounds; ++r)
    last = grid.refine(f, aopts.samples_per_round, hash_combine(pilot_seed, static_cast<std::uint64_t>(r)));
  if (spread) *spread = last;
  return grid;
}

Estimate integrate_on_grid(const AdaptiveGrid& grid, const Integrand& f, const QuadratureOptions& opts) {
  const int d = grid.dim();
  auto warped = [&](std::span<const double> u) -> std::optional<cplx> {
    std::array<double, kMaxJetParams> y{};
    const double jac = grid.warp(u, std::span<double>(y.data(), static_cast<std::size_t>(d)));
    const auto v = f(std::span<const double>(y.data(), static_cast<std::size_t>(d)));
    if (!v) return std::nullopt;
    return *v * jac;
  };
  return integrate(Domain::cube(d), warped, opts);
}

Estimate integrate_adaptive(const Domain& domain, const Integrand& f, const QuadratureOptions& opts,
                            const AdaptiveOptions& aopts) {
  const int d = domain.dim();
  if (d == 0) return integrate(domain, f, opts);
  Integrand on_cube = [&](std::span<const double> u) -> std::optional<cplx> {
    std::array<double, kMaxJetParams> x{};
    const double jac = domain.map(u, std::span<double>(x.data(), static_cast<std::size_t>(d)));
    const auto v = f(std::span<const double>(x.data(), static_cast<std::size_t>(d)));
    if (!v) return std::nullopt;
    return *v * jac;
  };
  const AdaptiveGrid grid = adapt_grid(on_cube, d, opts.seed, aopts);
  return integrate_on_grid(grid, on_cube, opts);
}

}  // namespace periodlab
