#include "periodlab/log_forms.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace periodlab {

namespace {

std::strong_ordering compare_optional(const std::optional<RationalFunction>& a, const std::optional<RationalFunction>& b) {
  if (a.has_value() != b.has_value()) return a.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (!a) return std::strong_ordering::equal;
  return compare(*a, *b);
}

// Ordering of terms ignoring the scalar.
std::strong_ordering compare_shape(const LogTerm& a, const LogTerm& b) {
  if (auto c = compare_optional(a.log_arg, b.log_arg); c != 0) return c;
  if (auto c = a.zero_on_cut <=> b.zero_on_cut; c != 0) return c;
  if (auto c = a.dlogs.size() <=> b.dlogs.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.dlogs.size(); ++i)
    if (auto c = compare(a.dlogs[i], b.dlogs[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

}  // namespace

cplx principal_log(cplx w) {
  if (w.imag() == 0.0 && w.real() < 0.0) return {std::log(-w.real()), std::numbers::pi};
  return std::log(w);
}

bool on_log_cut(cplx w) {
  return w.real() <= 0.0 && std::abs(w.imag()) <= kMembershipTol * (1.0 + std::abs(w));
}

LogForm LogForm::constant(int nvars, cplx c) {
  LogForm f(nvars, 0);
  f.add_term(LogTerm{c, std::nullopt, false, {}});
  return f;
}

LogForm LogForm::dlog_wedge(int nvars, std::vector<RationalFunction> factors, cplx scalar) {
  LogForm f(nvars, static_cast<int>(factors.size()));
  f.add_term(LogTerm{scalar, std::nullopt, false, std::move(factors)});
  return f;
}

void LogForm::add_term(LogTerm term) {
  if (static_cast<int>(term.dlogs.size()) != degree_) throw std::invalid_argument("LogForm: term degree mismatch");
  for (const auto& f : term.dlogs)
    if (f.nvars() != nvars_) throw std::invalid_argument("LogForm: dlog factor arity mismatch");
  if (term.log_arg && term.log_arg->nvars() != nvars_) throw std::invalid_argument("LogForm: log factor arity mismatch");
  terms_.push_back(std::move(term));
}

LogForm LogForm::canonical() const {
  std::vector<LogTerm> sorted;
  sorted.reserve(terms_.size());
  for (LogTerm t : terms_) {
    int sign = 1;
    bool repeated = false;
    for (std::size_t i = 1; i < t.dlogs.size(); ++i) {
      for (std::size_t k = i; k > 0; --k) {
        const auto c = compare(t.dlogs[k - 1], t.dlogs[k]);
        if (c == 0) repeated = true;
        if (c <= 0) break;
        std::swap(t.dlogs[k - 1], t.dlogs[k]);
        sign = -sign;
      }
    }
    if (repeated) continue;
    t.scalar *= static_cast<double>(sign);
    sorted.push_back(std::move(t));
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const LogTerm& a, const LogTerm& b) { return compare_shape(a, b) < 0; });
  LogForm out(nvars_, degree_);
  for (auto& t : sorted) {
    if (!out.terms_.empty() && compare_shape(out.terms_.back(), t) == 0) {
      out.terms_.back().scalar += t.scalar;
    } else {
      out.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(out.terms_, [](const LogTerm& t) { return t.scalar == cplx(0.0); });
  return out;
}

LogForm& LogForm::operator+=(const LogForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && terms_.empty() && nvars_ == 0) {
    *this = o;
    return *this;
  }
  if (o.nvars_ != nvars_ || o.degree_ != degree_) throw std::invalid_argument("LogForm: sum of mismatched forms");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

LogForm& LogForm::operator*=(cplx c) {
  for (auto& t : terms_) t.scalar *= c;
  return *this;
}

bool operator==(const LogForm& a, const LogForm& b) {
  if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_) return false;
  const LogForm ca = a.canonical();
  const LogForm cb = b.canonical();
  if (ca.terms_.size() != cb.terms_.size()) return false;
  for (std::size_t i = 0; i < ca.terms_.size(); ++i) {
    if (compare_shape(ca.terms_[i], cb.terms_[i]) != 0) return false;
    if (std::abs(ca.terms_[i].scalar - cb.terms_[i].scalar) > 1e-14 * (1.0 + std::abs(ca.terms_[i].scalar))) return false;
  }
  return true;
}

std::string LogForm::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i > 0) os << " + ";
    os << "(" << t.scalar.real();
    if (t.scalar.imag() != 0.0) os << (t.scalar.imag() < 0 ? "-" : "+") << std::abs(t.scalar.imag()) << "i";
    os << ")";
    if (t.log_arg) os << "*log(" << t.log_arg->to_string(names) << ")";
    for (std::size_t k = 0; k < t.dlogs.size(); ++k) os << (k == 0 ? "*" : "^") << "dlog(" << t.dlogs[k].to_string(names) << ")";
  }
  return os.str();
}

LogForm wedge(const LogForm& a, const LogForm& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("wedge: arity mismatch");
  LogForm out(a.nvars(), a.degree() + b.degree());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      if (ta.log_arg && tb.log_arg) throw std::invalid_argument("wedge: both factors carry a log");
      LogTerm t;
      t.scalar = ta.scalar * tb.scalar;
      t.log_arg = ta.log_arg ? ta.log_arg : tb.log_arg;
      t.zero_on_cut = ta.log_arg ? ta.zero_on_cut : tb.zero_on_cut;
      t.dlogs = ta.dlogs;
      t.dlogs.insert(t.dlogs.end(), tb.dlogs.begin(), tb.dlogs.end());
      out.add_term(std::move(t));
    }
  }
  return out;
}

LogForm theta(int n, int j) {
  if (j < 0 || j > n) throw std::out_of_range("theta: j out of range");
  if (j == 0) return LogForm::constant(n + 1, 1.0);
  LogForm f(n + 1, j);
  for (int r = 0; r <= j; ++r) {
    LogTerm t;
    t.scalar = (r % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i <= j; ++i)
      if (i != r) t.dlogs.emplace_back(Polynomial::variable(n + 1, i));
    f.add_term(std::move(t));
  }
  return f;
}

RationalFunction hbar_argument(int n, int j) {
  if (j < 1 || j > n) throw std::out_of_range("hbar_argument: j out of range");
  // 1 - eps_j/z_j = -(z_0 + ... + z_{j-1}) / z_j
  Polynomial num = Polynomial::coordinate_sum(n + 1, 0, j - 1) * cplx(-1.0);
  return RationalFunction(std::move(num), Polynomial::variable(n + 1, j));
}

LogForm omega(int n, int j) {
  if (j < 0 || j > n) throw std::out_of_range("omega: j out of range");
  if (j == 0) return LogForm(n + 1, 0);
  const LogForm base = theta(n, j - 1);
  const RationalFunction arg = hbar_argument(n, j);
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  LogForm f(n + 1, j - 1);
  for (auto t : base.terms()) {
    t.scalar *= sign;
    t.log_arg = arg;
    t.zero_on_cut = true;
    f.add_term(std::move(t));
  }
  return f;
}

std::optional<cplx> hbar(int j, const ProjectivePoint& z) {
  if (j < 1 || j > z.dim()) throw std::out_of_range("hbar: j out of range");
  if (in_S(j, z)) return cplx(0.0);
  const auto c = z.canonical();
  const cplx zj = c[static_cast<std::size_t>(j)];
  if (zj == cplx(0.0)) return std::nullopt;
  return principal_log(1.0 - epsilon(j, c) / zj);
}

cplx ParamForm::operator()(std::span<const std::vector<cplx>> frame) const {
  if (static_cast<int>(frame.size()) != k_) throw std::invalid_argument("ParamForm: frame size mismatch");
  const auto& subsets = k_subsets(m_, k_);
  std::array<cplx, kMaxIndexDim * kMaxIndexDim> minor{};
  cplx total = 0.0;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (coeffs_[s] == cplx(0.0)) continue;
    int col = 0;
    for (int q = 0; q < m_; ++q) {
      if (!(subsets[s] >> q & 1U)) continue;
      for (int a = 0; a < k_; ++a) minor[static_cast<std::size_t>(a * k_ + col)] = frame[static_cast<std::size_t>(a)][static_cast<std::size_t>(q)];
      ++col;
    }
    total += coeffs_[s] * determinant(std::span<const cplx>(minor.data(), static_cast<std::size_t>(k_ * k_)), k_);
  }
  return total;
}

cplx ParamForm::wedge_top(const ParamForm& other) const {
  if (other.m_ != m_ || other.k_ + k_ != m_) throw std::invalid_argument("ParamForm::wedge_top: degrees do not sum to the dimension");
  const IndexMask full = (IndexMask{1} << m_) - 1;
  const auto& subsets = k_subsets(m_, k_);
  cplx total = 0.0;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (coeffs_[s] == cplx(0.0)) continue;
    const IndexMask rest = full & ~subsets[s];
    const cplx c = other.coeff(rest);
    if (c == cplx(0.0)) continue;
    total += static_cast<double>(shuffle_sign(subsets[s], rest)) * coeffs_[s] * c;
  }
  return total;
}

std::optional<ParamForm> pullback(const LogForm& form, std::span<const Jet> coords) {
  if (static_cast<int>(coords.size()) != form.nvars()) throw std::invalid_argument("pullback: arity mismatch");
  const int m = coords.empty() ? 0 : coords[0].params();
  const int k = form.degree();
  if (k > m) throw std::invalid_argument("pullback: form degree exceeds parameter dimension");
  ParamForm out(m, k);
  const auto& subsets = k_subsets(m, k);
  std::array<cplx, kMaxIndexDim * kMaxJetParams> rows{};
  std::array<cplx, kMaxIndexDim * kMaxIndexDim> minor{};
  for (const auto& t : form.terms()) {
    cplx c = t.scalar;
    if (t.log_arg) {
      const auto v = (*t.log_arg)(coords);
      if (!v || v->value() == cplx(0.0)) return std::nullopt;
      if (t.zero_on_cut && on_log_cut(v->value())) continue;
      c *= principal_log(v->value());
    }
    for (int a = 0; a < k; ++a) {
      const auto g = t.dlogs[static_cast<std::size_t>(a)](coords);
      if (!g || g->value() == cplx(0.0)) return std::nullopt;
      const cplx inv = 1.0 / g->value();
      for (int q = 0; q < m; ++q) rows[static_cast<std::size_t>(a * m + q)] = g->d(q) * inv;
    }
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      int col = 0;
      for (int q = 0; q < m; ++q) {
        if (!(subsets[s] >> q & 1U)) continue;
        for (int a = 0; a < k; ++a) minor[static_cast<std::size_t>(a * k + col)] = rows[static_cast<std::size_t>(a * m + q)];
        ++col;
      }
      out.coeffs()[s] += c * determinant(std::span<const cplx>(minor.data(), static_cast<std::size_t>(k * k)), k);
    }
  }
  return out;
}

ParamForm pullback_real(std::span<const cplx> coeffs, int d, int k, std::span<const Jet> coords) {
  if (static_cast<int>(coords.size()) != d) throw std::invalid_argument("pullback_real: arity mismatch");
  const int m = coords.empty() ? 0 : coords[0].params();
  if (k > m) throw std::invalid_argument("pullback_real: form degree exceeds parameter dimension");
  const auto& src = k_subsets(d, k);
  if (coeffs.size() != src.size()) throw std::invalid_argument("pullback_real: coefficient count mismatch");
  ParamForm out(m, k);
  const auto& dst = k_subsets(m, k);
  std::array<cplx, kMaxIndexDim * kMaxIndexDim> minor{};
  for (std::size_t J = 0; J < src.size(); ++J) {
    if (coeffs[J] == cplx(0.0)) continue;
    int rows_idx[kMaxIndexDim];
    int a = 0;
    for (int i = 0; i < d; ++i)
      if (src[J] >> i & 1U) rows_idx[a++] = i;
    for (std::size_t I = 0; I < dst.size(); ++I) {
      int col = 0;
      for (int q = 0; q < m; ++q) {
        if (!(dst[I] >> q & 1U)) continue;
        for (int r = 0; r < k; ++r) minor[static_cast<std::size_t>(r * k + col)] = coords[static_cast<std::size_t>(rows_idx[r])].d(q);
        ++col;
      }
      out.coeffs()[I] += coeffs[J] * determinant(std::span<const cplx>(minor.data(), static_cast<std::size_t>(k * k)), k);
    }
  }
  return out;
}

}  // namespace periodlab
