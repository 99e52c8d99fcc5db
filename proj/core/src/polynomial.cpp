#include "periodlab/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace periodlab {

namespace {

std::strong_ordering compare_doubles(double a, double b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

Polynomial Polynomial::constant(int nvars, cplx c) {
  Polynomial p(nvars);
  p.add_term(c, std::vector<int>(static_cast<std::size_t>(nvars), 0));
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(index)] = 1;
  Polynomial p(nvars);
  p.add_term(1.0, std::move(e));
  return p;
}

Polynomial Polynomial::linear(int nvars, std::span<const cplx> coeffs) {
  if (static_cast<int>(coeffs.size()) > nvars) throw std::invalid_argument("Polynomial::linear: too many coefficients");
  Polynomial p(nvars);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    e[i] = 1;
    p.add_term(coeffs[i], std::move(e));
  }
  return p;
}

Polynomial Polynomial::coordinate_sum(int nvars, int first, int last) {
  Polynomial p(nvars);
  for (int i = first; i <= last; ++i) p += variable(nvars, i);
  return p;
}

void Polynomial::add_term(cplx coeff, std::vector<int> exponents) {
  if (static_cast<int>(exponents.size()) != nvars_) throw std::invalid_argument("Polynomial::add_term: arity mismatch");
  terms_.push_back({coeff, std::move(exponents)});
  normalize();
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Monomial& a, const Monomial& b) { return a.exponents < b.exponents; });
  std::vector<Monomial> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exponents == t.exponents) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Monomial& m) { return m.coeff == cplx(0.0, 0.0); });
  terms_ = std::move(merged);
}

int Polynomial::total_degree() const {
  int deg = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exponents) s += e;
    deg = std::max(deg, s);
  }
  return deg;
}

std::vector<int> Polynomial::min_exponents() const {
  std::vector<int> m(static_cast<std::size_t>(nvars_), 0);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exponents[i]);
  return m;
}

cplx Polynomial::operator()(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) != nvars_) throw std::invalid_argument("Polynomial: arity mismatch");
  cplx sum = 0.0;
  for (const auto& t : terms_) {
    cplx m = t.coeff;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const int e = t.exponents[i];
      if (e == 0) continue;
      if (e == 1) {
        m *= z[i];
      } else {
        m *= std::pow(z[i], e);
      }
    }
    sum += m;
  }
  return sum;
}

Jet Polynomial::operator()(std::span<const Jet> z) const {
  if (static_cast<int>(z.size()) != nvars_) throw std::invalid_argument("Polynomial: arity mismatch");
  const int np = z.empty() ? 0 : z[0].params();
  Jet sum(cplx(0.0), np);
  for (const auto& t : terms_) {
    Jet m(t.coeff, np);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const int e = t.exponents[i];
      if (e == 0) continue;
      m *= (e == 1 ? z[i] : jet_pow(z[i], e));
    }
    sum += m;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: arity mismatch");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  Polynomial neg = o;
  neg *= cplx(-1.0);
  return *this += neg;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: arity mismatch");
  std::vector<Monomial> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      std::vector<int> e(a.exponents);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.exponents[i];
      out.push_back({a.coeff * b.coeff, std::move(e)});
    }
  }
  terms_ = std::move(out);
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx c) {
  for (auto& t : terms_) t.coeff *= c;
  normalize();
  return *this;
}

std::strong_ordering compare(const Polynomial& a, const Polynomial& b) {
  if (auto c = a.nvars_ <=> b.nvars_; c != 0) return c;
  if (auto c = a.terms_.size() <=> b.terms_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& ta = a.terms_[i];
    const auto& tb = b.terms_[i];
    if (auto c = ta.exponents <=> tb.exponents; c != 0) return c;
    if (auto c = compare_doubles(ta.coeff.real(), tb.coeff.real()); c != 0) return c;
    if (auto c = compare_doubles(ta.coeff.imag(), tb.coeff.imag()); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if (t.coeff.imag() == 0.0) {
      os << t.coeff.real();
    } else {
      os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "-" : "+") << std::abs(t.coeff.imag()) << "i)";
    }
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      os << "*" << (i < names.size() ? names[i] : "z" + std::to_string(i));
      if (t.exponents[i] != 1) os << "^" << t.exponents[i];
    }
  }
  return os.str();
}

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)), den_(Polynomial::constant(num_.nvars(), 1.0)) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
  if (num_.nvars() != den_.nvars()) throw std::invalid_argument("RationalFunction: arity mismatch");
}

std::optional<cplx> RationalFunction::operator()(std::span<const cplx> z) const {
  const cplx d = den_(z);
  if (d == cplx(0.0, 0.0)) return std::nullopt;
  return num_(z) / d;
}

std::optional<Jet> RationalFunction::operator()(std::span<const Jet> z) const {
  const Jet d = den_(z);
  if (d.value() == cplx(0.0, 0.0)) return std::nullopt;
  return num_(z) / d;
}

std::strong_ordering compare(const RationalFunction& a, const RationalFunction& b) {
  if (auto c = compare(a.num_, b.num_); c != 0) return c;
  return compare(a.den_, b.den_);
}

std::string RationalFunction::to_string(std::span<const std::string> names) const {
  const bool unit_den = den_ == Polynomial::constant(den_.nvars(), 1.0);
  if (unit_den) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

}  // namespace periodlab
