#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <numbers>

#include "periodlab/currents.hpp"

using namespace periodlab;

namespace {

PairOptions fixed_points(std::uint64_t budget, std::uint64_t seed = 0) {
  PairOptions o;
  o.quadrature.budget = budget;
  o.quadrature.seed = seed;
  o.adapt = false;
  o.allocate = false;
  return o;
}

PairOptions adapted(std::uint64_t budget, std::uint64_t seed = 0) {
  PairOptions o;
  o.quadrature.budget = budget;
  o.quadrature.seed = seed;
  return o;
}

const Chart kChart1{Chart::Kind::Projective, 1, 1};

// w = z_0 / z_1 on a disc of radius R, weight in homogeneous coordinates
ChainPtr chart_disc(double R) {
  auto c = std::make_shared<ParametrizedChain>(Ambient{Chart::Kind::Projective, 1}, 2, "disc");
  c->add_patch(ChainPatch{Domain::polydisc(1),
                          [R](std::span<const Jet> p, std::vector<Jet>& out) {
                            out = {(p[0] + p[1] * cplx(0.0, 1.0)) * cplx(R), Jet(cplx(1.0), 2)};
                          },
                          1});
  return c;
}

}  // namespace

TEST(Triple, DegreeBookkeeping) {
  for (int n = 1; n <= 3; ++n) {
    const auto t = build_fundamental_triple(n);
    EXPECT_EQ(t.theta.degree(), n);
    EXPECT_EQ(t.simplex.degree(), n);
    EXPECT_EQ(t.w.degree(), n - 1);
    EXPECT_EQ(static_cast<int>(t.w.terms().size()), n);
  }
  const auto t0 = build_fundamental_triple(0);
  EXPECT_TRUE(t0.w.is_zero());
  EXPECT_EQ(t0.theta.degree(), 0);
  EXPECT_EQ(t0.simplex.degree(), 0);
}

TEST(Triple, W1IsOneLogTermOverTheLine) {
  const auto t = build_fundamental_triple(1);
  ASSERT_EQ(t.w.terms().size(), 1u);
  const auto& term = t.w.terms()[0];
  EXPECT_EQ(term.scalar, cplx(1.0));
  EXPECT_EQ(term.chain->dim(), 2);
  EXPECT_EQ(term.weight, omega(1, 1));
}

TEST(Tau, OfZeroIsZero) {
  const auto t0 = build_fundamental_triple(0);
  // W_0 = 0 lives on P^0; tau keeps it zero
  EXPECT_TRUE(tau(1, t0.w).is_zero());
  const auto t1 = build_fundamental_triple(1);
  EXPECT_EQ(tau(0, t1.theta).terms().size(), 1u);
  EXPECT_EQ(tau(2, t1.theta).terms().size(), 3u);
}

TEST(Chains, JacobianRank) {
  const double u[] = {0.31, 0.62, 0.27, 0.55, 0.4};
  for (int n = 1; n <= 3; ++n) {
    for (int j = 0; j <= n; ++j) {
      const auto c = r_chain(n, j);
      EXPECT_EQ(c->jacobian_rank(0, std::span<const double>(u, static_cast<std::size_t>(c->dim()))), c->dim());
    }
    for (int j = 1; j <= n; ++j) {
      const auto s = s_chain(n, j);
      EXPECT_EQ(s->jacobian_rank(0, std::span<const double>(u, static_cast<std::size_t>(s->dim()))), s->dim());
    }
  }
}

TEST(Pair, DegreeGate) {
  const auto t = build_fundamental_triple(1);
  const TestForm f0 = TestForm::random(kChart1, 0, {0.3, 0.2}, 0.5, 1);
  EXPECT_THROW(pair(t.theta, f0, fixed_points(1024)), std::invalid_argument);
  const TestForm other = TestForm::random(Chart{Chart::Kind::Projective, 2, 0}, 1, {0.1, 0.1, 0.2, 0.2}, 0.5, 1);
  EXPECT_THROW(pair(t.theta, other, fixed_points(1024)), std::invalid_argument);
}

TEST(Pair, ThetaAgainstChartOracle) {
  // Theta_1 = -dw/w in the chart; dw ^ (a dx + b dy) = (b - i a) dx dy
  const TestForm phi = TestForm::random(kChart1, 1, {-0.4, 0.7}, 0.6, 77);
  const auto t = build_fundamental_triple(1);
  const Estimate e = pair(t.theta, phi, adapted(1 << 18));

  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto part = [&](bool imag) {
    auto inner = [&](double x) {
      const double h = std::sqrt(std::max(0.0, 0.36 - (x + 0.4) * (x + 0.4)));
      return GK::integrate(
          [&](double y) {
            const double pt[2] = {x, y};
            if (!phi.in_support(pt)) return 0.0;
            cplx ab[2];
            phi.coefficients(pt, ab);
            const cplx v = -(ab[1] - cplx(0.0, 1.0) * ab[0]) / cplx(x, y);
            return imag ? v.imag() : v.real();
          },
          0.7 - h, 0.7 + h, 8, 1e-12);
    };
    return GK::integrate(inner, -1.0, 0.2, 8, 1e-12);
  };
  const cplx oracle(part(false), part(true));
  EXPECT_LT(std::abs(e.value - oracle), 1e-4 * std::abs(oracle) + 3 * e.std_error);
  EXPECT_LT(std::abs(e.value - oracle), 1e-3 * std::abs(oracle));
}

TEST(Pair, Bilinear) {
  const auto t = build_fundamental_triple(1);
  const TestForm phi = make_projective_suite(1, 1, 1, 5)[0];
  const auto o = adapted(1 << 16, 3);
  const Estimate a = pair(t.theta, phi, o);
  const Estimate b = pair(t.simplex, phi, o);
  GeometricCurrent sum = t.theta;
  sum *= cplx(2.0, -1.0);
  GeometricCurrent s2 = t.simplex;
  s2 *= cplx(0.5);
  sum += s2;
  const Estimate c = pair(sum, phi, o);
  const cplx expect = cplx(2.0, -1.0) * a.value + 0.5 * b.value;
  EXPECT_LE(std::abs(c.value - expect), 3 * (c.std_error + 2.3 * a.std_error + 0.5 * b.std_error) + 1e-12);
}

TEST(Pair, PushforwardAdjunction) {
  // phi on P^2 around a point of the face z_0 = 0
  const Chart chart{Chart::Kind::Projective, 2, 2};
  const TestForm phi = TestForm::random(chart, 1, {0.0, 0.0, 0.4, 0.3}, 0.4, 21);
  const auto t = build_fundamental_triple(1);
  for (int r = 0; r <= 2; ++r) {
    GeometricCurrent pushed(Ambient{Chart::Kind::Projective, 2});
    for (auto term : t.theta.terms()) {
      term.transforms.push_back(face_transform(2, r));
      pushed.add_term(term);
    }
    const Estimate lhs = pair(pushed, phi, fixed_points(1 << 14, 8));
    const Estimate rhs = pair(t.theta, phi.face_pullback(r), fixed_points(1 << 14, 8));
    EXPECT_LE(std::abs(lhs.value - rhs.value), 1e-10 * (1.0 + std::abs(rhs.value))) << "r=" << r;
  }
  // tau_2 is the alternating sum
  const Estimate tau_side = pair(tau(2, t.theta), phi, fixed_points(1 << 14, 8));
  cplx alt = 0.0;
  for (int r = 0; r <= 2; ++r) alt += (r % 2 ? -1.0 : 1.0) * pair(t.theta, phi.face_pullback(r), fixed_points(1 << 14, 8)).value;
  EXPECT_LE(std::abs(tau_side.value - alt), 1e-10 * (1.0 + std::abs(alt)));
}

TEST(BoundaryPair, IntervalStokes) {
  VerifyOptions o;
  o.tolerance = 1e-6;
  o.pairing.quadrature.budget = 1 << 20;
  const auto rep = verify_boundary_R(1, 0, o);
  EXPECT_TRUE(rep.pass) << rep.max_relative;
  EXPECT_LT(rep.max_relative, 1e-6);
}

TEST(BoundaryPair, ClosedSmoothFormHasNoBoundary) {
  // theta_1 is closed away from its poles
  const TestForm phi = TestForm::random(kChart1, 0, {-0.6, 0.5}, 0.4, 9);
  const auto t = build_fundamental_triple(1);
  const Estimate e = boundary_pair(t.theta, phi, adapted(1 << 16));
  EXPECT_LT(std::abs(e.value), 3 * e.std_error + 1e-8);
}

TEST(Verify, ResidueOnTheLine) {
  VerifyOptions o;
  o.tolerance = 1e-3;
  o.pairing.quadrature.budget = 1 << 18;
  const auto rep = verify_d_theta(1, 1, o);
  EXPECT_TRUE(rep.pass) << rep.max_relative;
}

TEST(Verify, ThetaOffTheDivisor) {
  // away from z_0 z_1 = 0 both sides vanish
  VerifyOptions o;
  o.tolerance = 1e-3;
  o.pairing.quadrature.budget = 1 << 16;
  o.suite = {TestForm::random(kChart1, 0, {-0.5, 0.6}, 0.3, 4), TestForm::random(kChart1, 0, {0.7, -0.2}, 0.3, 5)};
  const auto rep = verify_d_theta(1, 1, o);
  for (const auto& r : rep.rows) {
    EXPECT_LE(std::abs(r.lhs), 3 * r.std_error + 1e-12);
    EXPECT_LT(std::abs(r.rhs), 1e-12);
  }
}

TEST(Verify, OmegaOffTheSingularSet) {
  // supports miss S_1 (the ray w >= 0) and w = 0
  VerifyOptions o;
  o.tolerance = 1e-3;
  o.pairing.quadrature.budget = 1 << 18;
  o.suite = {TestForm::random(kChart1, 1, {-0.5, 0.6}, 0.3, 4), TestForm::random(kChart1, 1, {-0.8, -0.5}, 0.4, 6)};
  const auto rep = verify_d_omega(1, 1, o);
  EXPECT_TRUE(rep.pass) << rep.max_relative;
}

TEST(Verify, FundamentalRelationLine) {
  VerifyOptions o;
  o.tolerance = 1e-3;
  o.pairing.quadrature.budget = 1 << 18;
  const auto rep = verify_fundamental_relation(1, o);
  EXPECT_TRUE(rep.pass) << rep.max_relative;
}

TEST(Verify, ChartSplitAgrees) {
  // boundary of W_1 through the two-patch atlas and through one disc covering the support
  const TestForm phi = TestForm::random(kChart1, 1, {-0.6, 0.5}, 0.45, 12);
  const auto t = build_fundamental_triple(1);
  const Estimate atlas = boundary_pair(t.w, phi, adapted(1 << 18));
  GeometricCurrent disc(Ambient{Chart::Kind::Projective, 1});
  disc.add_term(CurrentTerm{1.0, chart_disc(1.5), omega(1, 1), {}});
  const Estimate direct = boundary_pair(disc, phi, adapted(1 << 18));
  EXPECT_LT(std::abs(atlas.value - direct.value), 1e-6 * std::abs(direct.value) + 3 * (atlas.std_error + direct.std_error));
}

TEST(Verify, ResidualRowBookkeeping) {
  const Estimate lhs = Estimate::exact_value(1.0);
  const Estimate part = Estimate::exact_value(2.0);
  const std::array<cplx, 1> c{0.5};
  const std::array<const Estimate*, 1> parts{&part};
  const auto row = make_row(0, lhs, c, parts, 1e-9);
  EXPECT_TRUE(row.pass);
  EXPECT_EQ(row.scale, 1.0);
  const auto bad = make_row(0, Estimate::exact_value(1.1), c, parts, 1e-9);
  EXPECT_FALSE(bad.pass);
  EXPECT_FALSE(bad.within_tolerance);
  // zero tolerance flags every nonzero residual
  EXPECT_FALSE(make_row(0, Estimate::exact_value(1.0 + 1e-15), c, parts, 0.0).within_tolerance);
}
