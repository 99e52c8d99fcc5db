#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "periodlab/jet.hpp"

namespace periodlab {

struct HypergeometricSpec {
  std::vector<double> a;  ///< numerator parameters
  std::vector<double> b;  ///< denominator parameters
  cplx z{0.0, 0.0};
};

struct SeriesResult {
  cplx value{0.0, 0.0};
  double tail_bound = 0.0;  ///< bound on the omitted terms
  int terms = 0;
  bool terminating = false;
};

/// Sum of prod (a_i)_k / prod (b_j)_k z^k / k!, stopped once the geometric
/// tail bound falls below tolerance * |sum|. Throws std::invalid_argument for
/// |z| >= 1 - 1e-6 on a non-terminating series or a non-positive integer b_j.
SeriesResult pfq(const HypergeometricSpec& spec, double tolerance = 1e-16);

/// Mahler measure of alpha + x + 1/x + y + 1/y through the 4F3 series at 16/alpha^2; alpha > 4.
double mahler_via_hypergeometric(double alpha);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
class EllipticCurve {
 public:
  /// Coefficients in the order a1, a2, a3, a4, a6.
  EllipticCurve(std::array<long long, 5> a, long long conductor);

  /// The conductor-24 curve y^2 = x^3 - x^2 - 4x + 4.
  static EllipticCurve e24();

  const std::array<long long, 5>& coefficients() const { return a_; }
  long long conductor() const { return conductor_; }
  long long discriminant() const;
  long long c4() const;
  long long c6() const;
  /// Primes dividing the discriminant.
  std::vector<long long> bad_primes() const;

  /// Projective points over F_p: one Legendre-symbol evaluation per x.
  long long count_points(long long p) const;
  /// Projective points over F_p by testing every (x, y).
  long long count_points_naive(long long p) const;

  /// Trace of Frobenius at a good prime; at a bad prime the local sign from
  /// the reduction type read off the conductor exponent.
  long long ap(long long p) const;
  /// Reduction type at p: "good", "split", "nonsplit" or "additive".
  std::string reduction(long long p) const;

  /// a_1..a_N of the L-series (index 0 unused).
  std::vector<long long> series_coefficients(long long N) const;

 private:
  std::array<long long, 5> a_;
  long long conductor_;
};

struct LValue {
  double value = 0.0;        ///< smoothed sum at cutoff X
  double value_double = 0.0; ///< same at 2X
  double error = 0.0;        ///< |difference|
  double tail_bound = 0.0;   ///< divisor-bound estimate of the omitted terms
  double cutoff = 0.0;
  long long terms = 0;
  bool flagged = false;
};

/// sum a_n n^-s exp(-(n/X)^2) at X and 2X.
LValue l_value(const EllipticCurve& E, double s = 2.0, double cutoff = 1e4, double tolerance = 1e-6);

/// Primes up to n.
std::vector<long long> primes_up_to(long long n);

}  // namespace periodlab
