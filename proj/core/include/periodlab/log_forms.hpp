#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "periodlab/multiindex.hpp"
#include "periodlab/polynomial.hpp"
#include "periodlab/projective.hpp"

namespace periodlab {

/// Principal logarithm, imaginary part in (-pi, pi]. A negative real argument
/// with a negative-zero imaginary part is treated as lying on the upper edge.
cplx principal_log(cplx w);

/// True when w lies on the cut (-inf, 0] within the membership tolerance.
bool on_log_cut(cplx w);

/// scalar * log(log_arg) * dlog f_1 ^ ... ^ dlog f_k
struct LogTerm {
  cplx scalar{1.0, 0.0};
  std::optional<RationalFunction> log_arg;
  /// The log factor evaluates to 0 when its argument is on the cut.
  bool zero_on_cut = false;
  std::vector<RationalFunction> dlogs;
};

/// Finite sum of LogTerms of a common degree, over a fixed coordinate list.
class LogForm {
 public:
  LogForm() = default;
  LogForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {}

  static LogForm constant(int nvars, cplx c);
  static LogForm dlog_wedge(int nvars, std::vector<RationalFunction> factors, cplx scalar = 1.0);

  void add_term(LogTerm term);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const std::vector<LogTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// dlog factors sorted (with sign), terms with a repeated factor dropped,
  /// equal terms merged.
  LogForm canonical() const;

  LogForm& operator+=(const LogForm& o);
  LogForm& operator*=(cplx c);
  friend LogForm operator+(LogForm a, const LogForm& b) { return a += b; }
  friend LogForm operator*(cplx c, LogForm a) { return a *= c; }
  friend LogForm operator-(LogForm a) { return a *= cplx(-1.0); }

  /// Structural equality after canonicalization.
  friend bool operator==(const LogForm& a, const LogForm& b);

  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  int nvars_ = 0;
  int degree_ = 0;
  std::vector<LogTerm> terms_;
};

/// Wedge product; at most one of the two forms may carry log factors.
LogForm wedge(const LogForm& a, const LogForm& b);

/// Sum_{r=0}^{j} (-1)^r dlog z_0 ^ ... (omit r) ... ^ dlog z_j on P^n.
LogForm theta(int n, int j);
/// (-1)^j hbar_j theta_{j-1}; zero for j = 0.
LogForm omega(int n, int j);
/// 1 - eps_j(z)/z_j as a rational function of the homogeneous coordinates.
RationalFunction hbar_argument(int n, int j);
/// log(1 - eps_j(z)/z_j), zero on S_j, nullopt at a pole.
std::optional<cplx> hbar(int j, const ProjectivePoint& z);

/// A k-form on an m-dimensional parameter space, given by its coefficients on
/// the basis du_I, I ranging over k_subsets(m, k).
class ParamForm {
 public:
  ParamForm(int m, int k) : m_(m), k_(k), coeffs_(k_subsets(m, k).size(), cplx(0.0)) {}

  int params() const { return m_; }
  int degree() const { return k_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }
  cplx coeff(IndexMask I) const { return coeffs_[static_cast<std::size_t>(subset_position(m_, I))]; }

  /// Value on k tangent vectors (each of length m).
  cplx operator()(std::span<const std::vector<cplx>> frame) const;

  /// Coefficient of the top-degree form this ^ other.
  cplx wedge_top(const ParamForm& other) const;

 private:
  int m_;
  int k_;
  std::vector<cplx> coeffs_;
};

/// Pullback of `form` through a map whose coordinate values and exact partial
/// derivatives are given as jets. nullopt at poles.
std::optional<ParamForm> pullback(const LogForm& form, std::span<const Jet> coords);

/// Pullback of a real differential form given by coefficients on dx_J
/// (J in k_subsets(d, k)) through real coordinates x(u) with jets.
ParamForm pullback_real(std::span<const cplx> coeffs, int d, int k, std::span<const Jet> coords);

}  // namespace periodlab
