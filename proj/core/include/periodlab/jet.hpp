#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace periodlab {

using cplx = std::complex<double>;

/// Maximum number of independent parameters a Jet tracks.
inline constexpr int kMaxJetParams = 10;

/// A complex value together with its exact first partial derivatives with
/// respect to a fixed list of parameters (forward-mode differentiation).
///
/// Parameters may be real (simplex/cube/angle coordinates) or complex
/// holomorphic coordinates; every map in this library is holomorphic in its
/// complex inputs, so the same chain rule applies to both.
class Jet {
 public:
  Jet() = default;
  explicit Jet(int nparams) : n_(check(nparams)) {}
  Jet(cplx value, int nparams) : v_(value), n_(check(nparams)) {}

  static Jet variable(cplx value, int nparams, int index) {
    Jet j(value, nparams);
    j.d_[static_cast<std::size_t>(index)] = 1.0;
    return j;
  }

  cplx value() const { return v_; }
  int params() const { return n_; }
  cplx d(int k) const { return d_[static_cast<std::size_t>(k)]; }
  cplx& d(int k) { return d_[static_cast<std::size_t>(k)]; }
  std::span<const cplx> grad() const { return {d_.data(), static_cast<std::size_t>(n_)}; }

  Jet& operator+=(const Jet& o) {
    v_ += o.v_;
    for (int k = 0; k < n_; ++k) d_[k] += o.d_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v_ -= o.v_;
    for (int k = 0; k < n_; ++k) d_[k] -= o.d_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    for (int k = 0; k < n_; ++k) d_[k] = d_[k] * o.v_ + v_ * o.d_[k];
    v_ *= o.v_;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    const cplx inv = 1.0 / o.v_;
    const cplx q = v_ * inv;
    for (int k = 0; k < n_; ++k) d_[k] = (d_[k] - q * o.d_[k]) * inv;
    v_ = q;
    return *this;
  }
  Jet& operator+=(cplx c) { v_ += c; return *this; }
  Jet& operator-=(cplx c) { v_ -= c; return *this; }
  Jet& operator*=(cplx c) {
    v_ *= c;
    for (int k = 0; k < n_; ++k) d_[k] *= c;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator+(Jet a, cplx c) { return a += c; }
  friend Jet operator-(Jet a, cplx c) { return a -= c; }
  friend Jet operator*(Jet a, cplx c) { return a *= c; }
  friend Jet operator*(cplx c, Jet a) { return a *= c; }
  friend Jet operator-(Jet a) { return a *= cplx(-1.0); }

  /// Value and derivative of exp.
  friend Jet exp(const Jet& a) {
    Jet r = a;
    r.v_ = std::exp(a.v_);
    for (int k = 0; k < a.n_; ++k) r.d_[k] = r.v_ * a.d_[k];
    return r;
  }

 private:
  static int check(int n) {
    if (n < 0 || n > kMaxJetParams) throw std::invalid_argument("Jet: parameter count out of range");
    return n;
  }

  cplx v_{0.0, 0.0};
  int n_ = 0;
  std::array<cplx, kMaxJetParams> d_{};
};

/// Real and imaginary parts, for jets over real parameters.
inline Jet real_part(const Jet& a) {
  Jet r(cplx(a.value().real()), a.params());
  for (int k = 0; k < a.params(); ++k) r.d(k) = a.d(k).real();
  return r;
}

inline Jet imag_part(const Jet& a) {
  Jet r(cplx(a.value().imag()), a.params());
  for (int k = 0; k < a.params(); ++k) r.d(k) = a.d(k).imag();
  return r;
}

inline Jet jet_pow(const Jet& base, int exponent) {
  Jet result(cplx(1.0), base.params());
  if (exponent == 0) return result;
  Jet b = exponent > 0 ? base : Jet(cplx(1.0), base.params()) / base;
  for (int e = exponent > 0 ? exponent : -exponent; e > 0; e >>= 1) {
    if (e & 1) result *= b;
    if (e > 1) b *= b;
  }
  return result;
}

}  // namespace periodlab
