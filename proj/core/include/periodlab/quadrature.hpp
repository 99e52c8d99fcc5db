#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "periodlab/jet.hpp"

namespace periodlab {

enum class FactorKind { Cube, Simplex, Torus, Polydisc };

/// One factor of a product integration domain.
///  - Cube: [0,1]^d, coordinates x.
///  - Simplex: {s_1..s_d >= 0, sum <= 1}, coordinates (s_1..s_d); s_0 = 1 - sum.
///  - Torus: angles in [0, 2pi]^d.
///  - Polydisc: closed unit polydisc in C^d, coordinates (Re w_1, Im w_1, ...).
struct DomainFactor {
  FactorKind kind;
  int dim;  ///< number of cube parameters consumed (2d for a polydisc of complex dimension d)
};

/// Ordered product of factors. Points are produced from the unit cube of the
/// total dimension by orientation-preserving maps with explicit Jacobians.
class Domain {
 public:
  Domain() = default;
  explicit Domain(std::vector<DomainFactor> factors);

  static Domain cube(int d) { return Domain({{FactorKind::Cube, d}}); }
  static Domain simplex(int d) { return Domain({{FactorKind::Simplex, d}}); }
  static Domain torus(int d) { return Domain({{FactorKind::Torus, d}}); }
  static Domain polydisc(int complex_dim) { return Domain({{FactorKind::Polydisc, 2 * complex_dim}}); }

  const std::vector<DomainFactor>& factors() const { return factors_; }
  int dim() const { return dim_; }
  /// Volume of the domain in its natural coordinates.
  double volume() const;

  /// Natural coordinates of the cube point u; returns the Jacobian determinant.
  double map(std::span<const double> u, std::span<double> x) const;
  /// Natural coordinates of u as jets in the cube parameters.
  void map_jets(std::span<const double> u, std::span<Jet> x) const;

 private:
  std::vector<DomainFactor> factors_;
  int dim_ = 0;
};

/// Randomized quasi-Monte Carlo estimate.
struct Estimate {
  cplx value{0.0, 0.0};
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<cplx> replicates;   ///< one mean per randomization
  std::uint64_t resampled = 0;    ///< non-evaluable points replaced
  bool converged = true;
  bool flagged = false;
  bool exact = false;

  /// sum_i coeffs[i] * parts[i], replicate by replicate.
  static Estimate combine(std::span<const cplx> coeffs, std::span<const Estimate* const> parts);
  static Estimate exact_value(cplx v);
  void refresh_error();
};

/// Integrand on natural domain coordinates; nullopt marks a non-evaluable point.
using Integrand = std::function<std::optional<cplx>(std::span<const double>)>;

struct QuadratureOptions {
  std::uint64_t budget = 1'000'000;  ///< total evaluations across randomizations
  std::uint64_t seed = 0;
  int randomizations = 8;
  double target_error = 0.0;  ///< 0 disables the convergence gate
};

/// Axis-aligned box in the unit cube.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  double volume() const;
};

/// True when the singular locus may meet the box (cube coordinates).
using LocusIndicator = std::function<bool(const Box&)>;

Estimate integrate(const Domain& domain, const Integrand& f, const QuadratureOptions& opts = {});

struct SingularOptions {
  int max_depth = 24;            ///< bisections per flagged box along its longest side
  std::uint64_t min_samples = 256;  ///< per stratum and randomization
};

Estimate integrate_singular(const Domain& domain, const Integrand& f, const LocusIndicator& locus,
                            const QuadratureOptions& opts = {}, const SingularOptions& sopts = {});

/// Separable piecewise-linear warp of the unit cube whose bins are refined so
/// that each carries a similar share of |f|^2 (VEGAS-style importance grid).
class AdaptiveGrid {
 public:
  AdaptiveGrid(int dim, int bins);

  int dim() const { return dim_; }
  int bins() const { return bins_; }
  const std::vector<double>& edges(int axis) const { return edges_[static_cast<std::size_t>(axis)]; }

  /// Warped point of the unit cube; returns the Jacobian of the warp.
  double warp(std::span<const double> u, std::span<double> x) const;
  /// One refinement round from `samples` scrambled Sobol points of f (cube
  /// coordinates). Returns the sample standard deviation of the warped
  /// integrand seen in this round.
  double refine(const Integrand& f, std::uint64_t samples, std::uint64_t seed);

 private:
  int dim_;
  int bins_;
  std::vector<std::vector<double>> edges_;
};

struct AdaptiveOptions {
  int bins = 32;
  int rounds = 6;
  std::uint64_t samples_per_round = 8192;
};

/// Grid adapted to f on the unit cube of dimension dim; `spread` receives the
/// standard deviation of the warped integrand from the last round.
AdaptiveGrid adapt_grid(const Integrand& f, int dim, std::uint64_t seed, const AdaptiveOptions& aopts = {},
                        double* spread = nullptr);
/// Integral of f over the unit cube sampled through a frozen grid.
Estimate integrate_on_grid(const AdaptiveGrid& grid, const Integrand& f, const QuadratureOptions& opts = {});

/// Adapts a grid on pilot samples, then integrates through the frozen grid.
/// The pilot samples are not part of the estimate.
Estimate integrate_adaptive(const Domain& domain, const Integrand& f, const QuadratureOptions& opts = {},
                            const AdaptiveOptions& aopts = {});

/// Worker count used by the integrators (PERIODLAB_THREADS, else hardware concurrency).
int worker_count();

}  // namespace periodlab
