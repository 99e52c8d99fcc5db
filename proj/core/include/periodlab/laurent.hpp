#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "periodlab/jet.hpp"
#include "periodlab/polynomial.hpp"

namespace periodlab {

/// Malformed polynomial text; `offset` is the byte position of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Laurent polynomial in t_1..t_n with real coefficients. Zero coefficients
/// are never stored.
class LaurentPolynomial {
 public:
  using Exponents = std::vector<int>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(int nvars);

  static LaurentPolynomial constant(int nvars, double c);
  /// alpha + x + 1/x + y + 1/y
  static LaurentPolynomial p_alpha(double alpha);

  /// Grammar: terms `c * x1^e1 * ... * xn^en` joined by `+`/`-`, integer
  /// exponents of either sign, variables x1..xn or the aliases x, y, z.
  /// The variable count is the larger of `nvars` and the highest index used.
  static LaurentPolynomial parse(std::string_view text, int nvars = 0);

  void add_term(double coeff, Exponents exponents);

  int nvars() const { return nvars_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of t^0.
  double constant_term() const;

  /// Smallest m >= 0 making p * (t_1...t_n)^m a polynomial.
  int clearing_power() const;
  /// Total degree of the cleared polynomial p * (t_1...t_n)^m.
  int degree() const;
  /// p * (t_1...t_n)^m as a polynomial in t.
  Polynomial cleared() const;
  Polynomial to_polynomial() const;

  /// Throws std::domain_error when a coordinate is zero.
  cplx operator()(std::span<const cplx> t) const;
  Jet operator()(std::span<const Jet> t) const;

  bool all_coefficients_positive() const;
  std::string to_string() const;

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

 private:
  int nvars_ = 0;
  std::map<Exponents, double> terms_;
};

}  // namespace periodlab
