#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "periodlab/multiindex.hpp"
#include "periodlab/quadrature.hpp"
#include "periodlab/sobol.hpp"

using namespace periodlab;

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureOptions budget(std::uint64_t n, std::uint64_t seed = 0) {
  QuadratureOptions q;
  q.budget = n;
  q.seed = seed;
  return q;
}

// Boxes whose closure touches the hyperplane x_axis = c.
LocusIndicator plane(std::size_t axis, double c) {
  return [axis, c](const Box& b) { return b.lo[axis] <= c && c <= b.hi[axis]; };
}

}  // namespace

TEST(Sobol, FirstPointsAndScramble) {
  SobolSequence s(2);
  std::array<std::uint32_t, 2> bits{};
  s.point_bits(1, bits);
  EXPECT_EQ(bits[0], 0x80000000u);
  EXPECT_EQ(bits[1], 0x80000000u);
  // walking the Gray code agrees with direct evaluation
  std::array<std::uint32_t, 2> walk{};
  s.point_bits(0, walk);
  for (std::uint64_t i = 0; i < 1000; ++i) s.next_bits(i, walk);
  s.point_bits(1000, bits);
  EXPECT_EQ(walk, bits);
  EXPECT_NE(owen_scramble(0x12345678u, 1), owen_scramble(0x12345678u, 2));
}

TEST(Domain, VolumesAndJacobians) {
  EXPECT_DOUBLE_EQ(Domain::cube(3).volume(), 1.0);
  EXPECT_NEAR(Domain::simplex(3).volume(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(Domain::torus(2).volume(), 4 * kPi * kPi, 1e-12);
  EXPECT_NEAR(Domain::polydisc(1).volume(), kPi, 1e-12);
  const Domain mixed({{FactorKind::Simplex, 2}, {FactorKind::Torus, 1}});
  EXPECT_EQ(mixed.dim(), 3);
  EXPECT_NEAR(mixed.volume(), kPi, 1e-12);
}

TEST(Domain, JetsMatchPoints) {
  const Domain d({{FactorKind::Simplex, 2}, {FactorKind::Polydisc, 2}, {FactorKind::Cube, 1}});
  const std::vector<double> u{0.3, 0.8, 0.45, 0.6, 0.2};
  std::vector<double> x(5);
  const double jac = d.map(u, x);
  std::vector<Jet> xj(5);
  d.map_jets(u, xj);
  std::vector<double> jm(25);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(xj[static_cast<std::size_t>(i)].value().real(), x[static_cast<std::size_t>(i)], 1e-15);
    for (int k = 0; k < 5; ++k) jm[static_cast<std::size_t>(i * 5 + k)] = xj[static_cast<std::size_t>(i)].d(k).real();
  }
  EXPECT_NEAR(std::abs(determinant(jm, 5)), jac, 1e-12);
}

TEST(Integrate, ConstantOnCube) {
  const auto e = integrate(Domain::cube(2), [](auto) { return std::optional<cplx>(1.0); }, budget(1 << 14));
  EXPECT_NEAR(e.value.real(), 1.0, 1e-15);
  EXPECT_LT(e.std_error, 1e-15);
  EXPECT_EQ(e.replicates.size(), 8u);
}

TEST(Integrate, LogOnInterval) {
  const auto e = integrate(Domain::cube(1), [](std::span<const double> x) { return std::optional<cplx>(std::log(x[0])); },
                           budget(1'000'000));
  EXPECT_LT(std::abs(e.value.real() + 1.0), 1e-4);
}

TEST(Integrate, TorusOrthogonality) {
  const auto e = integrate(Domain::torus(2),
                           [](std::span<const double> x) { return std::optional<cplx>(std::cos(x[0]) / (4 * kPi * kPi)); },
                           budget(1 << 16));
  EXPECT_LE(std::abs(e.value), 3 * e.std_error + 1e-12);
  EXPECT_LT(std::abs(e.value), 1e-5);
}

TEST(Integrate, SimplexMoments) {
  // Dirichlet moment 1!1!/4!
  const auto e = integrate(Domain::simplex(2), [](std::span<const double> s) { return std::optional<cplx>(s[0] * s[1]); },
                           budget(1 << 18));
  EXPECT_NEAR(e.value.real(), 1.0 / 24.0, 5 * e.std_error + 1e-9);
}

TEST(Integrate, DeterministicAndSeedSensitive) {
  auto f = [](std::span<const double> x) { return std::optional<cplx>(std::exp(x[0] * x[1]) * std::sin(5 * x[2])); };
  const auto a = integrate(Domain::cube(3), f, budget(1 << 16, 9));
  const auto b = integrate(Domain::cube(3), f, budget(1 << 16, 9));
  const auto c = integrate(Domain::cube(3), f, budget(1 << 16, 10));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.replicates, b.replicates);
  EXPECT_NE(a.value, c.value);
}

TEST(Integrate, ErrorShrinksWithBudget) {
  auto f = [](std::span<const double> x) { return std::optional<cplx>(std::exp(x[0]) * std::cos(3 * x[1])); };
  std::vector<double> errs;
  for (std::uint64_t n : {1u << 14, 1u << 16, 1u << 18}) errs.push_back(integrate(Domain::cube(2), f, budget(n, 3)).std_error);
  EXPECT_LT(errs[1], errs[0]);
  EXPECT_LT(errs[2], errs[1]);
}

TEST(Integrate, Linearity) {
  auto f = [](std::span<const double> x) { return std::optional<cplx>(std::exp(-x[0] * x[0] - x[1])); };
  auto g = [](std::span<const double> x) { return std::optional<cplx>(cplx(std::sqrt(x[0]), x[1] * x[1])); };
  auto fg = [&](std::span<const double> x) { return std::optional<cplx>(*f(x) + *g(x)); };
  const auto a = integrate(Domain::cube(2), f, budget(1 << 16, 4));
  const auto b = integrate(Domain::cube(2), g, budget(1 << 16, 4));
  const auto s = integrate(Domain::cube(2), fg, budget(1 << 16, 4));
  EXPECT_LE(std::abs(s.value - a.value - b.value), 3 * (a.std_error + b.std_error + s.std_error) + 1e-14);
}

TEST(Integrate, CombineIsReplicateWise) {
  auto f = [](std::span<const double> x) { return std::optional<cplx>(x[0]); };
  const auto a = integrate(Domain::cube(1), f, budget(1 << 12, 1));
  const auto b = integrate(Domain::cube(1), f, budget(1 << 12, 2));
  const std::array<cplx, 2> coeffs{1.0, -1.0};
  const std::array<const Estimate*, 2> parts{&a, &b};
  const auto c = Estimate::combine(coeffs, parts);
  EXPECT_NEAR(std::abs(c.value - (a.value - b.value)), 0.0, 1e-15);
  const auto e = Estimate::exact_value(2.0);
  EXPECT_TRUE(e.exact);
  EXPECT_EQ(e.std_error, 0.0);
}

TEST(IntegrateSingular, LogAbsInterval) {
  auto f = [](std::span<const double> x) -> std::optional<cplx> {
    if (x[0] == 0.5) return std::nullopt;
    return std::log(std::abs(x[0] - 0.5));
  };
  const auto e = integrate_singular(Domain::cube(1), f, plane(0, 0.5), budget(1'000'000));
  EXPECT_LT(std::abs(e.value.real() - (-1.0 - std::log(2.0))), 1e-3);
  EXPECT_FALSE(e.flagged);
}

TEST(IntegrateSingular, LogRadiusOnSquare) {
  // 1D oracle: two mirror triangles in polar coordinates
  const double oracle = 2.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                  [](double th) {
                                    const double s = 1.0 / std::cos(th);
                                    return s * s / 2 * std::log(s) - s * s / 4;
                                  },
                                  0.0, kPi / 4, 10, 1e-14);
  EXPECT_NEAR(oracle, (std::log(2.0) - 3.0 + kPi / 2) / 2, 1e-12);
  auto f = [](std::span<const double> x) -> std::optional<cplx> {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 == 0.0) return std::nullopt;
    return std::log(r2) / 2;
  };
  auto corner = [](const Box& b) { return b.lo[0] == 0.0 && b.lo[1] == 0.0; };
  const auto e = integrate_singular(Domain::cube(2), f, corner, budget(1'000'000));
  EXPECT_LT(std::abs(e.value.real() - oracle), 1e-3);
  EXPECT_LE(std::abs(e.value.real() - oracle), 3 * e.std_error + 1e-5);
}

TEST(IntegrateSingular, ConstantUnaffected) {
  auto one = [](auto) { return std::optional<cplx>(1.0); };
  const auto plain = integrate(Domain::cube(2), one, budget(1 << 16));
  const auto strat = integrate_singular(Domain::cube(2), one, plane(1, 0.3), budget(1 << 16));
  EXPECT_NEAR(strat.value.real(), plain.value.real(), 1e-12);
}

TEST(IntegrateSingular, HeavyRejectionIsFlagged) {
  auto holes = [](std::span<const double> x) -> std::optional<cplx> {
    if (x[0] < 0.05) return std::nullopt;
    return 1.0;
  };
  const auto e = integrate_singular(Domain::cube(1), holes, plane(0, 0.0), budget(1 << 16));
  EXPECT_TRUE(e.flagged);
}

TEST(Adaptive, PeakedIntegrand) {
  // narrow Gaussian bump; the warped grid should beat the plain estimator
  auto f = [](std::span<const double> x) {
    const double a = (x[0] - 0.3) / 0.02, b = (x[1] - 0.6) / 0.02;
    return std::optional<cplx>(std::exp(-0.5 * (a * a + b * b)));
  };
  const double exact = 2 * kPi * 0.02 * 0.02;
  const auto plain = integrate(Domain::cube(2), f, budget(1 << 16, 5));
  const auto adapted = integrate_adaptive(Domain::cube(2), f, budget(1 << 16, 5));
  EXPECT_NEAR(adapted.value.real(), exact, 4 * adapted.std_error + 1e-9);
  EXPECT_LT(adapted.std_error, plain.std_error);
}
