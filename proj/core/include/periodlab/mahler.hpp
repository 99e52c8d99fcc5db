#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "periodlab/currents.hpp"
#include "periodlab/laurent.hpp"
#include "periodlab/log_forms.hpp"
#include "periodlab/quadrature.hpp"

namespace periodlab {

/// Relative size below which a divisor factor counts as vanishing.
inline constexpr double kDivisorTol = 1e-9;

/// Point (t_1..t_n; lambda) of the torus-times-line space.
struct FiberPoint {
  std::vector<cplx> t;
  cplx lambda{1.0, 0.0};
};

/// p(t); throws std::domain_error when a coordinate is zero.
cplx eval_p(const LaurentPolynomial& p, std::span<const cplx> t);

/// Cleared polynomial in z_0..z_{n+1} whose zero set is the non-trivial part
/// of the bad divisor. R(z) = (z_1...z_n)^(d-m) (eps_0...eps_{n-1})^m p(t(z)),
/// m the clearing power and d the cleared degree.
Polynomial build_Rp(const LaurentPolynomial& p);

/// z (n+2 coordinates summing to 1) lies on the bad divisor: some z_k,
/// some partial sum eps_k or R_p(z) vanishes to relative tolerance.
bool in_Y(const LaurentPolynomial& p, std::span<const cplx> z, double tol = kDivisorTol);

/// Solution (t; lambda) of the defining system over z; nullopt on the divisor.
std::optional<FiberPoint> psi_map(const LaurentPolynomial& p, std::span<const cplx> z);
/// (eps_0/z_1, ..., eps_{n-1}/z_n; eps_n/z_{n+1}), so psi = ell o this map.
FiberPoint psi_factor(std::span<const cplx> z);
/// (t; lambda) -> (t; p(t)/lambda).
FiberPoint ell_map(const LaurentPolynomial& p, const FiberPoint& x);

/// Simplex coordinates of (t; lambda) given the value p(t). Generic in the
/// scalar type so the coordinate identities can be checked exactly.
template <class T>
std::vector<T> simplex_coordinates(std::span<const T> t, const T& p_value, const T& lambda) {
  const std::size_t n = t.size();
  std::vector<T> z(n + 2, lambda);
  const T one = lambda / lambda;
  const T scale = p_value / (p_value + lambda);
  T tail = scale;  // prod_{r>j} t_r / (1 + t_r) * scale
  for (std::size_t j = n; j >= 1; --j) {
    z[j] = tail / (one + t[j - 1]);
    tail = tail * t[j - 1] / (one + t[j - 1]);
  }
  z[0] = tail;
  z[n + 1] = lambda / (p_value + lambda);
  return z;
}

/// Inverse of psi_map; nullopt where some 1 + t_k or p + lambda vanishes.
std::optional<std::vector<cplx>> phi_map(const LaurentPolynomial& p, const FiberPoint& x);
/// Same map on jets of (t_1, ..., t_n, lambda).
std::optional<std::vector<Jet>> phi_map(const LaurentPolynomial& p, std::span<const Jet> x);

struct PullbackReport {
  int n = 0;
  int samples = 0;
  double theta_error = 0.0;
  /// Index j-1 for the log form of index j = 1..n+1.
  std::vector<double> omega_error;
  /// Samples where a log coefficient differed by a nonzero multiple of 2 pi i.
  int branch_shifts = 0;
  int rejected = 0;

  double max_error() const;
};

/// Pulls the simplex log forms back along phi_map at random points and
/// compares with the closed forms in (t; lambda).
PullbackReport verify_pullbacks(const LaurentPolynomial& p, int samples, std::uint64_t seed);

struct ConditionReport {
  bool p1 = false;
  double p1_margin = 0.0;  ///< min |p| found on the torus
  bool p2 = false;
  bool p2_from_coefficients = false;
  double p2_margin = 0.0;  ///< min p found on the log-radial grid (sampled route only)
  /// Index j-1: min distance from p(t) to (-inf, 0] over the torus slice t_{j+1..n} = 1.
  std::vector<double> p3_margins;
  bool p3 = false;
  std::string p3_note;
};

ConditionReport check_conditions(const LaurentPolynomial& p, int grid = 64);

/// Integral of log|p| over the unit torus. Constants are exact; p with
/// possible torus zeros goes through the singular integrator.
Estimate mahler_measure(const LaurentPolynomial& p, const QuadratureOptions& opts = {});

// Chains on C^{n+1} with coordinates (t_1..t_n, lambda).

/// (C*)^j x (0,inf)^{n+1-j}, moduli restricted to [rho, 1/rho]; j = n+1 is
/// the whole torus.
ChainPtr torus_chain(int n, int j, double rho);
/// Compact torus |t_k| = 1 times the point lambda.
ChainPtr compact_torus_chain(int n, cplx lambda);
Transform ell_transform(const LaurentPolynomial& p);

/// -log(-t_j) dlog t_1 ^ ... ^ dlog t_{j-1}; j = n+1 uses lambda for t_{n+1}.
LogForm beta_form(int n, int j);
/// log(-p(t)/lambda) dlog t_1 ^ ... ^ dlog t_n.
LogForm log_ratio_form(const LaurentPolynomial& p);

struct RegulatorTriple {
  int n = 0;
  double rho = 0.0;
  cplx simplex_scalar{0.0, 0.0};
  GeometricCurrent simplex{Ambient{Chart::Kind::Affine, 1}};
  GeometricCurrent theta{Ambient{Chart::Kind::Affine, 1}};
  GeometricCurrent w{Ambient{Chart::Kind::Affine, 1}};
};

/// Throws std::invalid_argument when the torus or positivity condition fails.
RegulatorTriple build_regulator_triple(const LaurentPolynomial& p, double rho = 1e-2);

/// ell_# of the positive orthant against minus the orthant, on forms near (1, ..., 1).
IdentityReport verify_ell_reversal(const LaurentPolynomial& p, const VerifyOptions& opts, double rho = 1e-2);
/// Theta part of the triple against direct quadrature in Cartesian coordinates.
IdentityReport verify_theta_pairing(const LaurentPolynomial& p, const VerifyOptions& opts, double rho = 1e-2);

struct PeriodReport {
  int n = 0;
  Estimate total;        ///< period of the torus cycle at lambda = -1
  Estimate vanishing;    ///< the lambda-log piece, expected 0
  Estimate log_piece;    ///< -integral of log(-p/lambda) dlog t
  Estimate mahler;       ///< independent torus average of log|p|
  cplx reference{0.0, 0.0};  ///< -(2 pi i)^n m(p)
  double relative_error = 0.0;
  /// Index j-1: distance from p to (-inf, 0] over the torus slice; positive
  /// means the crossing set is empty.
  std::vector<double> crossing_margins;
  bool crossings_empty = false;
  std::string crossing_note;
  double arg_average = 0.0;     ///< torus average of arg p
  double lift_defect = 0.0;     ///< distance of 2 Im(log integral)/(2 pi)^{n+1} to an integer
  bool flagged = false;
};

PeriodReport gamma_period(const LaurentPolynomial& p, const QuadratureOptions& opts = {});

struct EquidimensionalityReport {
  int trials = 0;
  double fiber_residual = 0.0;   ///< max residual of the defining system at psi(z)
  double inverse_error = 0.0;    ///< max |phi(psi(z)) - z|
  int face_samples = 0;
  int face_in_divisor = 0;
  int pair_samples = 0;
  int pair_violations = 0;
  /// (distance to the face z_0 = 0, |lambda|) along a path into the face.
  std::vector<std::pair<double, double>> approach;
  bool pass = false;
};

EquidimensionalityReport check_equidimensionality(const LaurentPolynomial& p, int samples, std::uint64_t seed);

/// Residuals of the defining system at (t; lambda; z).
double system_residual(const LaurentPolynomial& p, const FiberPoint& x, std::span<const cplx> z);

}  // namespace periodlab
