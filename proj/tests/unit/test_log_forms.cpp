#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "periodlab/log_forms.hpp"

using namespace periodlab;

namespace {

constexpr double kPi = std::numbers::pi;

RationalFunction var(int nvars, int i) { return RationalFunction(Polynomial::variable(nvars, i)); }

std::vector<Jet> holomorphic_point(std::span<const cplx> z) {
  std::vector<Jet> out;
  const int m = static_cast<int>(z.size());
  for (int i = 0; i < m; ++i) out.push_back(Jet::variable(z[static_cast<std::size_t>(i)], m, i));
  return out;
}

// index of the coordinate a theta term leaves out
int omitted(const LogTerm& t, int nvars) {
  for (int i = 0; i < nvars; ++i) {
    bool present = false;
    for (const auto& f : t.dlogs) present = present || f == var(nvars, i);
    if (!present) return i;
  }
  return -1;
}

double max_diff(const ParamForm& a, const ParamForm& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return worst;
}

}  // namespace

TEST(Theta, Examples) {
  const LogForm t11 = theta(1, 1);
  const LogForm expected =
      LogForm::dlog_wedge(2, {var(2, 1)}) + LogForm::dlog_wedge(2, {var(2, 0)}, -1.0);
  EXPECT_EQ(t11, expected);

  for (int n = 0; n <= 3; ++n) {
    const LogForm t0 = theta(n, 0);
    EXPECT_EQ(t0.degree(), 0);
    EXPECT_EQ(t0, LogForm::constant(n + 1, 1.0));
  }

  const LogForm t22 = theta(2, 2);
  ASSERT_EQ(t22.terms().size(), 3u);
  for (const auto& t : t22.terms()) {
    const int r = omitted(t, 3);
    EXPECT_EQ(t.scalar, cplx(r % 2 == 0 ? 1.0 : -1.0)) << "omitted " << r;
  }
}

TEST(Omega, Examples) {
  EXPECT_TRUE(omega(3, 0).is_zero());
  for (int n = 1; n <= 3; ++n)
    for (int j = 1; j <= n; ++j) EXPECT_EQ(omega(n, j).degree(), j - 1);

  // omega(1,1) = -log(-z_0/z_1) off the cut
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N;
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<cplx> z{cplx(N(rng), N(rng)), cplx(N(rng), N(rng))};
    const auto pb = pullback(omega(1, 1), holomorphic_point(z));
    ASSERT_TRUE(pb);
    const cplx w = -z[0] / z[1];
    const cplx expected = on_log_cut(w) ? cplx(0.0) : -principal_log(w);
    EXPECT_NEAR(std::abs(pb->coeffs()[0] - expected), 0.0, 1e-14);
  }
}

TEST(Hbar, Examples) {
  EXPECT_EQ(*hbar(1, ProjectivePoint({-1.0, 1.0})), cplx(0.0));
  EXPECT_EQ(*hbar(1, ProjectivePoint({1.0, 1.0})), cplx(0.0));
  const cplx v = *hbar(1, ProjectivePoint({cplx(0.0, 1.0), 1.0}));
  EXPECT_NEAR(std::abs(v - cplx(0.0, -kPi / 2)), 0.0, 1e-15);
  // z_1 = 0 is the t = 0 end of S_1, not a pole
  EXPECT_EQ(*hbar(1, ProjectivePoint({cplx(1.0, 1.0), 0.0})), cplx(0.0));
}

TEST(Hbar, ZeroOnS) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> N;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    // z_2 = t eps_2(z) with eps_1 random
    const cplx z0(N(rng), N(rng)), z1(N(rng), N(rng));
    const double t = U(rng);
    const cplx z2 = t / (1.0 - t) * (z0 + z1);
    const ProjectivePoint z({z0, z1, z2});
    ASSERT_TRUE(in_S(2, z));
    EXPECT_EQ(*hbar(2, z), cplx(0.0));
  }
}

TEST(Hbar, ContinuousOffTheCut) {
  // chart z_1 = 1: hbar_1 = log(-z_0), cut along z_0 >= 0, which is S_1
  for (double r : {0.05, 0.7, 3.0, 40.0}) {
    cplx prev = *hbar(1, ProjectivePoint({r * std::polar(1.0, 0.01), 1.0}));
    const int steps = 4000;
    for (int k = 1; k <= steps; ++k) {
      const double phi = 0.01 + (2 * kPi - 0.02) * k / steps;
      const cplx v = *hbar(1, ProjectivePoint({std::polar(r, phi), 1.0}));
      EXPECT_LT(std::abs(v - prev), 0.01);
      EXPECT_LE(std::abs(v), std::abs(std::log(r)) + kPi + 1e-12);
      prev = v;
    }
  }
}

TEST(LogForm, AntisymmetryAndCanonical) {
  const auto f = var(3, 0), g = var(3, 1), h = RationalFunction(Polynomial::coordinate_sum(3, 0, 2));
  const LogForm fg = LogForm::dlog_wedge(3, {f, g});
  const LogForm gf = LogForm::dlog_wedge(3, {g, f});
  EXPECT_EQ(fg, -gf);
  EXPECT_TRUE(LogForm::dlog_wedge(3, {f, h, f}).canonical().is_zero());
  EXPECT_TRUE((fg + gf).canonical().is_zero());

  const LogForm mixed = LogForm::dlog_wedge(3, {h, g, f}, 2.0) + LogForm::dlog_wedge(3, {f, g, h}, cplx(0.0, 1.0)) +
                        LogForm::dlog_wedge(3, {g, h, f});
  const LogForm c = mixed.canonical();
  EXPECT_EQ(c.canonical().terms().size(), c.terms().size());
  EXPECT_EQ(c.canonical(), c);
  EXPECT_EQ(c, mixed);
}

TEST(LogForm, WedgeRejectsTwoLogs) {
  EXPECT_THROW(wedge(omega(2, 1), omega(2, 1)), std::invalid_argument);
  EXPECT_EQ(wedge(theta(2, 1), LogForm::constant(3, 1.0)), theta(2, 1));
}

TEST(Pullback, ChainRule) {
  // z = p^2: dlog z -> 2 dlog p
  const LogForm dz = LogForm::dlog_wedge(1, {var(1, 0)});
  for (cplx p : {cplx(2.0), cplx(0.3, -1.2)}) {
    const Jet P = Jet::variable(p, 1, 0);
    const std::vector<Jet> coords{P * P};
    const auto pb = pullback(dz, coords);
    ASSERT_TRUE(pb);
    EXPECT_NEAR(std::abs(pb->coeffs()[0] - 2.0 / p), 0.0, 1e-15);
  }
}

TEST(Pullback, ThetaAlongFaces) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> N;
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n)
    for (int j = 0; j < n; ++j)
      for (int r = j + 1; r <= n; ++r)
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<cplx> w(static_cast<std::size_t>(n));
          for (auto& x : w) x = cplx(N(rng), N(rng));
          const auto base = holomorphic_point(w);
          const auto up = face<Jet>(r, base);
          const auto lhs = pullback(theta(n, j), up);
          const auto rhs = pullback(theta(n - 1, j), base);
          ASSERT_TRUE(lhs && rhs);
          worst = std::max(worst, max_diff(*lhs, *rhs));
        }
  EXPECT_LT(worst, 1e-12);
}

TEST(Pullback, Leibniz) {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> N;
  // f, g rational in three variables
  Polynomial f(3), g(3), h(3);
  f.add_term(1.0, {2, 0, 1});
  f.add_term(cplx(0.0, 3.0), {0, 1, 0});
  f.add_term(-2.0, {0, 0, 0});
  g.add_term(1.0, {1, 1, 1});
  g.add_term(0.5, {0, 0, 2});
  h.add_term(1.0, {1, 0, 0});
  h.add_term(1.0, {0, 0, 0});
  const RationalFunction F(f, h), G(g);
  const RationalFunction FG(f * g, h);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<cplx> z{cplx(N(rng), N(rng)), cplx(N(rng), N(rng)), cplx(N(rng), N(rng))};
    const auto pt = holomorphic_point(z);
    const auto lhs = pullback(LogForm::dlog_wedge(3, {FG}), pt);
    const auto a = pullback(LogForm::dlog_wedge(3, {F}), pt);
    const auto b = pullback(LogForm::dlog_wedge(3, {G}), pt);
    ASSERT_TRUE(lhs && a && b);
    for (std::size_t i = 0; i < 3; ++i) {
      const cplx sum = a->coeffs()[i] + b->coeffs()[i];
      EXPECT_LE(std::abs(lhs->coeffs()[i] - sum), 1e-12 * (1.0 + std::abs(sum)));
    }
  }
}

TEST(Pullback, PoleIsSignalled) {
  const std::vector<cplx> z{0.0, 1.0};
  EXPECT_FALSE(pullback(theta(1, 1), holomorphic_point(z)).has_value());
}

TEST(Evaluate, Examples) {
  const std::vector<cplx> one{cplx(0.7)};
  const auto c = pullback(LogForm::constant(1, 1.0), holomorphic_point(one));
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)(std::span<const std::vector<cplx>>{}), cplx(1.0));

  const std::vector<cplx> two{cplx(2.0)};
  const auto d = pullback(LogForm::dlog_wedge(1, {var(1, 0)}), holomorphic_point(two));
  const std::vector<std::vector<cplx>> unit{{1.0}};
  EXPECT_NEAR(std::abs((*d)(unit) - 0.5), 0.0, 1e-16);

  // theta(1,1) in the chart z_1 = 1 at z_0 = i
  const std::vector<Jet> chart{Jet::variable(cplx(0.0, 1.0), 1, 0), Jet(cplx(1.0), 1)};
  const auto t = pullback(theta(1, 1), chart);
  ASSERT_TRUE(t);
  EXPECT_NEAR(std::abs((*t)(unit) - (-1.0 / cplx(0.0, 1.0))), 0.0, 1e-15);
}

TEST(ParamForm, FrameAndWedge) {
  ParamForm a(2, 1), b(2, 1);
  a.coeffs()[0] = 1.0;  // du_0
  b.coeffs()[1] = 1.0;  // du_1
  EXPECT_EQ(a.wedge_top(b), cplx(1.0));
  EXPECT_EQ(b.wedge_top(a), cplx(-1.0));
  const std::vector<std::vector<cplx>> frame{{3.0, 4.0}};
  EXPECT_EQ(a(frame), cplx(3.0));
  EXPECT_THROW(a(std::span<const std::vector<cplx>>{}), std::invalid_argument);
}
