#include "periodlab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace periodlab {

namespace {

bool nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

long long mod(long long x, long long p) {
  const long long r = x % p;
  return r < 0 ? r + p : r;
}

long long exponent_of(long long n, long long p) {
  long long e = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

// Legendre symbol by Euler's criterion.
int legendre(long long a, long long p) {
  a = mod(a, p);
  if (a == 0) return 0;
  long long r = 1, b = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

SeriesResult pfq(const HypergeometricSpec& spec, double tolerance) {
  for (double b : spec.b)
    if (nonpositive_integer(b)) throw std::invalid_argument("pfq: denominator parameter is a non-positive integer");
  bool terminating = false;
  for (double a : spec.a) terminating = terminating || nonpositive_integer(a);
  if (!terminating && std::abs(spec.z) >= 1.0 - 1e-6) throw std::invalid_argument("pfq: |z| must be below 1");

  SeriesResult r;
  r.terminating = terminating;
  cplx term = 1.0;
  cplx sum = 1.0;
  int small_run = 0;
  double run_max = 0.0;
  const bool balanced = spec.a.size() == spec.b.size() + 1;
  for (int k = 0; k < 1'000'000; ++k) {
    cplx ratio = spec.z / static_cast<double>(k + 1);
    for (double a : spec.a) ratio *= a + k;
    for (double b : spec.b) ratio /= b + k;
    term *= ratio;
    r.terms = k + 1;
    if (term == 0.0) {
      r.tail_bound = 0.0;
      break;
    }
    sum += term;
    const double q = std::abs(ratio);
    if (q < 1.0) {
      run_max = small_run == 0 ? q : std::max(run_max, q);
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= 10) {
      // Future ratios of a balanced series approach |z|; otherwise they keep shrinking.
      const double rate = balanced ? std::max(run_max, std::abs(spec.z)) : run_max;
      if (rate < 1.0) {
        r.tail_bound = std::abs(term) * rate / (1.0 - rate);
        if (r.tail_bound <= tolerance * std::abs(sum)) break;
      }
    }
  }
  r.value = sum;
  return r;
}

double mahler_via_hypergeometric(double alpha) {
  if (!(alpha > 4.0)) throw std::invalid_argument("mahler_via_hypergeometric: alpha must exceed 4");
  const HypergeometricSpec spec{{1.5, 1.5, 1.0, 1.0}, {2.0, 2.0, 2.0}, cplx(16.0 / (alpha * alpha))};
  const cplx f = pfq(spec).value;
  return (std::log(cplx(alpha)) - 2.0 / (alpha * alpha) * f).real();
}

EllipticCurve::EllipticCurve(std::array<long long, 5> a, long long conductor) : a_(a), conductor_(conductor) {
  if (discriminant() == 0) throw std::invalid_argument("EllipticCurve: singular model");
}

EllipticCurve EllipticCurve::e24() { return EllipticCurve({0, -1, 0, -4, 4}, 24); }

long long EllipticCurve::c4() const {
  const auto [a1, a2, a3, a4, a6] = a_;
  const long long b2 = a1 * a1 + 4 * a2;
  const long long b4 = 2 * a4 + a1 * a3;
  return b2 * b2 - 24 * b4;
}

long long EllipticCurve::c6() const {
  const auto [a1, a2, a3, a4, a6] = a_;
  const long long b2 = a1 * a1 + 4 * a2;
  const long long b4 = 2 * a4 + a1 * a3;
  const long long b6 = a3 * a3 + 4 * a6;
  return -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
}

long long EllipticCurve::discriminant() const {
  const auto [a1, a2, a3, a4, a6] = a_;
  const long long b2 = a1 * a1 + 4 * a2;
  const long long b4 = 2 * a4 + a1 * a3;
  const long long b6 = a3 * a3 + 4 * a6;
  const long long b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

std::vector<long long> EllipticCurve::bad_primes() const {
  std::vector<long long> out;
  long long d = std::abs(discriminant());
  for (long long p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    out.push_back(p);
    while (d % p == 0) d /= p;
  }
  if (d > 1) out.push_back(d);
  return out;
}

long long EllipticCurve::count_points(long long p) const {
  if (p == 2) return count_points_naive(p);
  const auto [a1, a2, a3, a4, a6] = a_;
  // Completing the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  const long long b2 = mod(a1 * a1 + 4 * a2, p);
  const long long b4 = mod(2 * a4 + a1 * a3, p);
  const long long b6 = mod(a3 * a3 + 4 * a6, p);
  std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (long long y = 1; y < p; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;
  long long total = 1;  // point at infinity
  for (long long x = 0; x < p; ++x) {
    const long long f = ((((4 * x + b2) % p) * x + 2 * b4) % p * x + b6) % p;
    total += 1 + chi[static_cast<std::size_t>(f)];
  }
  return total;
}

long long EllipticCurve::count_points_naive(long long p) const {
  const auto [a1, a2, a3, a4, a6] = a_;
  long long total = 1;
  for (long long x = 0; x < p; ++x) {
    const long long rhs = mod(((x + mod(a2, p)) % p * x % p + mod(a4, p)) % p * x + a6, p);
    for (long long y = 0; y < p; ++y) {
      const long long lhs = mod(y * y + mod(a1, p) * x % p * y + mod(a3, p) * y, p);
      if (lhs == rhs) ++total;
    }
  }
  return total;
}

std::string EllipticCurve::reduction(long long p) const {
  if (discriminant() % p != 0) return "good";
  const long long f = exponent_of(conductor_, p);
  if (f >= 2) return "additive";
  if (f == 1) {
    // Odd p: split exactly when -c6 is a square mod p. p = 2 falls back to the count.
    if (p != 2) return legendre(-c6(), p) == 1 ? "split" : "nonsplit";
    return p + 1 - count_points_naive(p) == 1 ? "split" : "nonsplit";
  }
  // Non-minimal at p: the model is good after a change of variables.
  return "good";
}

long long EllipticCurve::ap(long long p) const {
  const std::string kind = reduction(p);
  if (kind == "split") return 1;
  if (kind == "nonsplit") return -1;
  if (kind == "additive") return 0;
  return p + 1 - count_points(p);
}

std::vector<long long> primes_up_to(long long n) {
  std::vector<long long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
  for (long long i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long long j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

std::vector<long long> EllipticCurve::series_coefficients(long long N) const {
  std::vector<long long> a(static_cast<std::size_t>(N + 1), 0);
  if (N >= 1) a[1] = 1;
  const auto primes = primes_up_to(N);
  std::vector<long long> spf(static_cast<std::size_t>(N + 1), 0);
  for (long long p : primes)
    for (long long m = p; m <= N; m += p)
      if (spf[static_cast<std::size_t>(m)] == 0) spf[static_cast<std::size_t>(m)] = p;
  // Prime powers by the Hecke recursion, then multiplicativity.
  for (long long p : primes) {
    const long long t = ap(p);
    const bool good = reduction(p) == "good";
    long long prev = 1, cur = t;
    for (long long q = p; q <= N; q *= p) {
      a[static_cast<std::size_t>(q)] = cur;
      const long long next = good ? t * cur - p * prev : t * cur;
      prev = cur;
      cur = next;
      if (q > N / p) break;
    }
  }
  for (long long m = 2; m <= N; ++m) {
    const long long p = spf[static_cast<std::size_t>(m)];
    long long q = 1, rest = m;
    while (rest % p == 0) {
      rest /= p;
      q *= p;
    }
    if (rest != 1) a[static_cast<std::size_t>(m)] = a[static_cast<std::size_t>(q)] * a[static_cast<std::size_t>(rest)];
  }
  return a;
}

LValue l_value(const EllipticCurve& E, double s, double cutoff, double tolerance) {
  LValue r;
  r.cutoff = cutoff;
  // Beyond 10 X the weight at the larger cutoff is below exp(-25).
  const auto N = static_cast<long long>(std::ceil(10.0 * cutoff));
  const auto a = E.series_coefficients(N);
  auto smoothed = [&](double X) {
    double sum = 0.0;
    for (long long n = N; n >= 1; --n) {
      const double x = static_cast<double>(n) / X;
      sum += static_cast<double>(a[static_cast<std::size_t>(n)]) * std::pow(static_cast<double>(n), -s) * std::exp(-x * x);
    }
    return sum;
  };
  r.value = smoothed(cutoff);
  r.value_double = smoothed(2.0 * cutoff);
  r.error = std::abs(r.value - r.value_double);
  r.terms = N;
  // |a_n| <= d(n) sqrt(n) over the next stretch; the weight beyond it is negligible.
  std::vector<int> divisors(static_cast<std::size_t>(2 * N + 1), 0);
  for (long long i = 1; i <= 2 * N; ++i)
    for (long long j = i; j <= 2 * N; j += i) ++divisors[static_cast<std::size_t>(j)];
  for (long long n = N + 1; n <= 2 * N; ++n) {
    const double x = static_cast<double>(n) / (2.0 * cutoff);
    r.tail_bound += divisors[static_cast<std::size_t>(n)] * std::pow(static_cast<double>(n), 0.5 - s) * std::exp(-x * x);
  }
  r.flagged = r.error > tolerance;
  return r;
}

}  // namespace periodlab
