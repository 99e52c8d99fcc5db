#include <gtest/gtest.h>

#include <boost/math/special_functions/prime.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numeric>

#include "periodlab/special_functions.hpp"

using namespace periodlab;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

// plain partial sum with 200 terms in 50 digits
cplx brute_pfq(const HypergeometricSpec& s) {
  big term_re = 1, term_im = 0, sum_re = 1, sum_im = 0;
  const big zr = s.z.real(), zi = s.z.imag();
  for (int k = 0; k < 200; ++k) {
    big c = 1;
    for (double a : s.a) c *= big(a) + k;
    for (double b : s.b) c /= big(b) + k;
    c /= k + 1;
    const big re = (term_re * zr - term_im * zi) * c;
    const big im = (term_re * zi + term_im * zr) * c;
    term_re = re;
    term_im = im;
    sum_re += re;
    sum_im += im;
  }
  return {static_cast<double>(sum_re), static_cast<double>(sum_im)};
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

const HypergeometricSpec mahler_series(cplx z) { return {{1.5, 1.5, 1.0, 1.0}, {2.0, 2.0, 2.0}, z}; }

}  // namespace

TEST(Pfq, TrivialValues) {
  EXPECT_EQ(pfq(mahler_series(0.0)).value, cplx(1.0));
  EXPECT_EQ(pfq({{}, {}, 0.0}).value, cplx(1.0));
  // (1 - z)^-2
  EXPECT_NEAR(std::abs(pfq({{2.0}, {}, 0.3}).value - 1.0 / 0.49), 0.0, 1e-14);
  // terminating
  const auto t = pfq({{-3.0, 1.0}, {1.0}, 2.0});
  EXPECT_TRUE(t.terminating);
  EXPECT_NEAR(std::abs(t.value - cplx(-1.0)), 0.0, 1e-14);
}

TEST(Pfq, AgainstHighPrecisionSum) {
  for (cplx z : {cplx(0.5), cplx(-0.5), cplx(0.1), cplx(0.3, 0.3), cplx(-0.2, 0.45), cplx(16.0 / 64.0)}) {
    const auto s = mahler_series(z);
    const cplx a = pfq(s).value, b = brute_pfq(s);
    EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(b)) << z;
  }
  const HypergeometricSpec other{{0.25, 0.75}, {1.0 / 3.0}, cplx(0.45)};
  EXPECT_LT(std::abs(pfq(other).value - brute_pfq(other)), 1e-12 * std::abs(brute_pfq(other)));
}

TEST(Pfq, StableUnderTighterTolerance) {
  const auto s = mahler_series(0.49);
  const auto a = pfq(s, 1e-12), b = pfq(s, 5e-13);
  EXPECT_LT(std::abs(a.value - b.value), 1e-12 * std::abs(b.value));
  EXPECT_LE(a.terms, b.terms);
}

TEST(Pfq, Rejects) {
  EXPECT_THROW(pfq(mahler_series(1.0)), std::invalid_argument);
  EXPECT_THROW(pfq(mahler_series(cplx(0.0, 1.2))), std::invalid_argument);
  EXPECT_THROW(pfq({{1.0}, {-2.0}, 0.1}), std::invalid_argument);
  EXPECT_THROW(pfq({{1.0}, {0.0}, 0.1}), std::invalid_argument);
}

TEST(MahlerSeries, ReferenceValues) {
  EXPECT_NEAR(mahler_via_hypergeometric(5.0), 1.50798260227951, 1e-10);
  EXPECT_NEAR(mahler_via_hypergeometric(8.0), 2.04569626821401, 1e-10);
  EXPECT_NEAR(mahler_via_hypergeometric(12.0), 2.47055987085139, 1e-10);
  EXPECT_NEAR(mahler_via_hypergeometric(100.0), 4.60497009592136, 1e-10);
}

TEST(MahlerSeries, LeadingTermAndMonotone) {
  // log a - 2/a^2 with the next term 9/a^4
  const double a = 100.0;
  const double m = mahler_via_hypergeometric(a);
  EXPECT_NEAR(m, std::log(a) - 2.0 / (a * a), 2 * 9.0 / std::pow(a, 4));
  double prev = mahler_via_hypergeometric(5.0);
  for (double x = 5.25; x <= 20.0; x += 0.25) {
    const double v = mahler_via_hypergeometric(x);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(mahler_via_hypergeometric(4.0), std::invalid_argument);
  EXPECT_THROW(mahler_via_hypergeometric(-8.0), std::invalid_argument);
}

TEST(Curve, Invariants) {
  const auto E = EllipticCurve::e24();
  const auto& c = E.coefficients();
  EXPECT_EQ(c, (std::array<long long, 5>{0, -1, 0, -4, 4}));
  EXPECT_EQ(E.conductor(), 24);
  // standard b-quantities
  const long long a1 = c[0], a2 = c[1], a3 = c[2], a4 = c[3], a6 = c[4];
  const long long b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
  const long long b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  EXPECT_EQ(E.discriminant(), -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6);
  EXPECT_EQ(E.c4(), b2 * b2 - 24 * b4);
  EXPECT_EQ(E.c6(), -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6);
  EXPECT_EQ(E.c4() * E.c4() * E.c4() - E.c6() * E.c6(), 1728 * E.discriminant());
  const auto bad = E.bad_primes();
  EXPECT_EQ(bad, (std::vector<long long>{2, 3}));
  EXPECT_EQ(E.ap(2), 0);
  EXPECT_EQ(E.ap(3), -1);
}

TEST(Curve, HasseBound) {
  const auto E = EllipticCurve::e24();
  int checked = 0;
  for (unsigned i = 2; checked < 100; ++i) {
    const long long p = boost::math::prime(i);
    ++checked;
    EXPECT_LE(std::abs(static_cast<double>(E.ap(p))), 2 * std::sqrt(static_cast<double>(p))) << p;
    EXPECT_EQ(E.reduction(p), "good");
  }
}

TEST(Curve, PointCountsAgreeWithBruteForce) {
  const auto E = EllipticCurve::e24();
  for (long long p = 5; p < 1000; ++p) {
    if (!is_prime(p)) continue;
    EXPECT_EQ(E.count_points(p), E.count_points_naive(p)) << p;
    EXPECT_EQ(E.ap(p), p + 1 - E.count_points(p));
  }
  const auto primes = primes_up_to(30);
  EXPECT_EQ(primes, (std::vector<long long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

TEST(Curve, SeriesCoefficients) {
  const auto E = EllipticCurve::e24();
  const long long N = 2000;
  const auto a = E.series_coefficients(N);
  ASSERT_EQ(static_cast<long long>(a.size()), N + 1);
  EXPECT_EQ(a[1], 1);
  for (long long p : primes_up_to(40)) {
    EXPECT_EQ(a[static_cast<std::size_t>(p)], E.ap(p));
    const long long expect = p == 2 || p == 3 ? a[static_cast<std::size_t>(p)] * a[static_cast<std::size_t>(p)]
                                                             : a[static_cast<std::size_t>(p)] * a[static_cast<std::size_t>(p)] - p;
    EXPECT_EQ(a[static_cast<std::size_t>(p * p)], expect) << p;
  }
  for (long long m = 1; m <= 44; ++m)
    for (long long n = 1; n <= 44; ++n)
      if (std::gcd(m, n) == 1)
        EXPECT_EQ(a[static_cast<std::size_t>(m * n)], a[static_cast<std::size_t>(m)] * a[static_cast<std::size_t>(n)]) << m << " " << n;
}

TEST(Curve, LValue) {
  const auto L = l_value(EllipticCurve::e24());
  EXPECT_NEAR(L.value, 0.841258870502380, 1e-6);
  EXPECT_LT(L.error, 1e-6);
  EXPECT_FALSE(L.flagged);
}
