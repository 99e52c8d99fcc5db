#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "periodlab/jet.hpp"

namespace periodlab {

struct Monomial {
  cplx coeff;
  std::vector<int> exponents;
};

/// Sparse multivariate polynomial with complex coefficients. Exponents may be
/// negative, which makes it a Laurent polynomial; evaluation then requires the
/// corresponding coordinates to be nonzero.
///
/// Terms are kept sorted by exponent vector with no zero coefficients, so two
/// polynomials compare equal iff they are the same polynomial.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, cplx c);
  static Polynomial variable(int nvars, int index);
  /// sum_i coeffs[i] * z_i
  static Polynomial linear(int nvars, std::span<const cplx> coeffs);
  /// z_first + ... + z_last
  static Polynomial coordinate_sum(int nvars, int first, int last);

  void add_term(cplx coeff, std::vector<int> exponents);

  int nvars() const { return nvars_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  /// Smallest exponent of each variable across all terms (0 when none negative).
  std::vector<int> min_exponents() const;

  cplx operator()(std::span<const cplx> z) const;
  Jet operator()(std::span<const Jet> z) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(cplx c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, cplx c) { return a *= c; }
  friend Polynomial operator*(cplx c, Polynomial a) { return a *= c; }

  /// Total order used to canonicalize wedge products of dlog factors.
  friend std::strong_ordering compare(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return compare(a, b) == std::strong_ordering::equal;
  }

  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void normalize();

  int nvars_ = 0;
  std::vector<Monomial> terms_;
};

/// Quotient of two polynomials in the same coordinates.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(Polynomial numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  int nvars() const { return num_.nvars(); }

  /// nullopt at a pole (vanishing denominator).
  std::optional<cplx> operator()(std::span<const cplx> z) const;
  std::optional<Jet> operator()(std::span<const Jet> z) const;

  friend std::strong_ordering compare(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return compare(a, b) == std::strong_ordering::equal;
  }

  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  Polynomial num_;
  Polynomial den_;
};

}  // namespace periodlab
