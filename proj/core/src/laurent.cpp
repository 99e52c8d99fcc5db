#include "periodlab/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace periodlab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  LaurentPolynomial run(int nvars) {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      double sign = 1.0;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1.0 : 1.0;
        ++pos_;
        skip();
      } else if (!first) {
        throw ParseError(pos_, "expected '+' or '-'");
      }
      parse_term(sign);
      first = false;
    }
    LaurentPolynomial p(std::max(nvars, max_index_));
    for (auto& [coeff, exps] : terms_) {
      exps.resize(static_cast<std::size_t>(p.nvars()), 0);
      p.add_term(coeff, exps);
    }
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void parse_term(double sign) {
    double coeff = sign;
    std::vector<int> exps;
    while (true) {
      skip();
      parse_factor(coeff, exps);
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    terms_.emplace_back(coeff, std::move(exps));
  }

  void parse_factor(double& coeff, std::vector<int>& exps) {
    if (pos_ >= s_.size()) throw ParseError(pos_, "expected a number or a variable");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) throw ParseError(pos_, "malformed number");
      pos_ = static_cast<std::size_t>(end - s_.data());
      coeff *= v;
      return;
    }
    const int index = parse_variable();
    int e = 1;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      e = parse_exponent();
    }
    if (static_cast<int>(exps.size()) < index) exps.resize(static_cast<std::size_t>(index), 0);
    exps[static_cast<std::size_t>(index - 1)] += e;
    max_index_ = std::max(max_index_, index);
  }

  // 1-based variable index.
  int parse_variable() {
    const std::size_t start = pos_;
    const char c = s_[pos_];
    if (c == 'y' || c == 'z') {
      ++pos_;
      return c == 'y' ? 2 : 3;
    }
    if (c != 'x') throw ParseError(start, "expected a number or a variable");
    ++pos_;
    std::size_t digits = pos_;
    while (digits < s_.size() && std::isdigit(static_cast<unsigned char>(s_[digits]))) ++digits;
    if (digits == pos_) return 1;
    int index = 0;
    const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + digits, index);
    if (ec != std::errc() || index < 1) throw ParseError(pos_, "bad variable index");
    pos_ = static_cast<std::size_t>(end - s_.data());
    return index;
  }

  int parse_exponent() {
    bool paren = false;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      paren = true;
      ++pos_;
      skip();
    }
    std::size_t start = pos_;
    if (start < s_.size() && (s_[start] == '-' || s_[start] == '+')) ++start;
    std::size_t end = start;
    while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
    if (end == start) throw ParseError(pos_, "expected an integer exponent");
    int v = 0;
    const auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + end, v);
    if (ec != std::errc()) throw ParseError(start, "exponent out of range");
    (void)p;
    if (s_[pos_] == '-') v = -v;
    pos_ = end;
    if (paren) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
    }
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int max_index_ = 0;
  std::vector<std::pair<double, std::vector<int>>> terms_;
};

}  // namespace

LaurentPolynomial::LaurentPolynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw std::invalid_argument("LaurentPolynomial: negative variable count");
}

LaurentPolynomial LaurentPolynomial::constant(int nvars, double c) {
  LaurentPolynomial p(nvars);
  p.add_term(c, Exponents(static_cast<std::size_t>(nvars), 0));
  return p;
}

LaurentPolynomial LaurentPolynomial::p_alpha(double alpha) {
  LaurentPolynomial p(2);
  p.add_term(alpha, {0, 0});
  p.add_term(1.0, {1, 0});
  p.add_term(1.0, {-1, 0});
  p.add_term(1.0, {0, 1});
  p.add_term(1.0, {0, -1});
  return p;
}

LaurentPolynomial LaurentPolynomial::parse(std::string_view text, int nvars) { return Parser(text).run(nvars); }

void LaurentPolynomial::add_term(double coeff, Exponents exponents) {
  if (static_cast<int>(exponents.size()) != nvars_) throw std::invalid_argument("LaurentPolynomial: exponent count mismatch");
  if (!std::isfinite(coeff)) throw std::invalid_argument("LaurentPolynomial: non-finite coefficient");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(exponents), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

bool LaurentPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && std::ranges::all_of(terms_.begin()->first, [](int e) { return e == 0; }));
}

double LaurentPolynomial::constant_term() const {
  const auto it = terms_.find(Exponents(static_cast<std::size_t>(nvars_), 0));
  return it == terms_.end() ? 0.0 : it->second;
}

int LaurentPolynomial::clearing_power() const {
  int m = 0;
  for (const auto& [e, c] : terms_)
    for (int v : e) m = std::max(m, -v);
  return m;
}

int LaurentPolynomial::degree() const {
  const int m = clearing_power();
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int total = 0;
    for (int v : e) total += v + m;
    d = std::max(d, total);
  }
  return d;
}

Polynomial LaurentPolynomial::cleared() const {
  const int m = clearing_power();
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents shifted = e;
    for (int& v : shifted) v += m;
    out.add_term(cplx(c, 0.0), std::move(shifted));
  }
  return out;
}

Polynomial LaurentPolynomial::to_polynomial() const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) out.add_term(cplx(c, 0.0), e);
  return out;
}

cplx LaurentPolynomial::operator()(std::span<const cplx> t) const {
  if (static_cast<int>(t.size()) != nvars_) throw std::invalid_argument("LaurentPolynomial: wrong point dimension");
  for (const auto& v : t)
    if (v == cplx(0.0)) throw std::domain_error("LaurentPolynomial: zero coordinate");
  cplx sum(0.0);
  for (const auto& [e, c] : terms_) {
    cplx term(c, 0.0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= std::pow(t[i], e[i]);
    sum += term;
  }
  return sum;
}

Jet LaurentPolynomial::operator()(std::span<const Jet> t) const {
  if (static_cast<int>(t.size()) != nvars_) throw std::invalid_argument("LaurentPolynomial: wrong point dimension");
  const int m = t.empty() ? 0 : t[0].params();
  for (const auto& v : t)
    if (v.value() == cplx(0.0)) throw std::domain_error("LaurentPolynomial: zero coordinate");
  Jet sum(cplx(0.0), m);
  for (const auto& [e, c] : terms_) {
    Jet term(cplx(c, 0.0), m);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= jet_pow(t[i], e[i]);
    sum += term;
  }
  return sum;
}

bool LaurentPolynomial::all_coefficients_positive() const {
  return !terms_.empty() && std::ranges::all_of(terms_, [](const auto& kv) { return kv.second > 0.0; });
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    double mag = c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    mag = std::abs(c);
    bool wrote = false;
    const bool unit = mag == 1.0;
    if (!unit || std::ranges::all_of(e, [](int v) { return v == 0; })) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (i + 1);
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace periodlab
