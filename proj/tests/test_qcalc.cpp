#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfrac/qcalc.hpp"

using namespace qfrac;

TEST(QLattice, Nodes) {
  const QLattice lat{1.0, 0.5, 4, 0.0};
  const auto n = lat.nodes();
  ASSERT_EQ(n.size(), 4u);
  EXPECT_DOUBLE_EQ(n[0], 1.0);
  EXPECT_DOUBLE_EQ(n[3], 0.125);
  // floor_a excludes nodes at or below it
  const auto m = QLattice{1.0, 0.5, 10, 0.25}.nodes();
  ASSERT_EQ(m.size(), 2u);
  EXPECT_DOUBLE_EQ(m.back(), 0.5);
  EXPECT_THROW((QLattice{1.0, 0.5, 0, 0.0}.validate()), DomainError);
  EXPECT_THROW((QLattice{1.0, 1.5, 3, 0.0}.validate()), DomainError);
}

TEST(LatticeOffset, Detects) {
  EXPECT_EQ(lattice_offset(0.125, 1.0, 0.5), std::optional<std::size_t>(3));
  EXPECT_EQ(lattice_offset(1.0, 1.0, 0.5), std::optional<std::size_t>(0));
  EXPECT_FALSE(lattice_offset(0.3, 1.0, 0.5));
  EXPECT_FALSE(lattice_offset(0.0, 1.0, 0.5));
}

TEST(QDerivative, Examples) {
  EXPECT_DOUBLE_EQ(q_derivative([](double) { return 4.2; }, 1.0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(q_derivative([](double x) { return x * x; }, 2.0, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(q_derivative([](double x) { return x * x * x; }, 1.0, 0.5), 1.75);
  EXPECT_THROW(q_derivative([](double x) { return x; }, 0.0, 0.5), DomainError);
}

// Truncation leaves a tail of order rel_tol = 1e-13 times the sum.
TEST(JacksonIntegralZero, Examples) {
  EXPECT_NEAR(jackson_integral_zero([](double) { return 1.0; }, 1.0, 0.5), 1.0, 1e-13);
  EXPECT_NEAR(jackson_integral_zero([](double x) { return x; }, 1.0, 0.5), 2.0 / 3.0, 1e-13);
  EXPECT_NEAR(jackson_integral_zero([](double x) { return x; }, 1.0, 0.5),
              oracle::jackson([](double x) { return x; }, 1.0, 0.5, 200), 1e-13);
  EXPECT_NEAR(jackson_integral_zero([](double x) { return x; }, 2.0, 0.5), 8.0 / 3.0, 1e-13);
}

TEST(JacksonIntegralZero, MatchesBruteSum) {
  auto f = [](double x) { return std::cos(3.0 * x) + 1.0 / std::sqrt(x); };
  // terms decay like q^{i/2}: the dropped tail is about rel_tol / (1 - sqrt q) of the sum
  for (double q : {0.2, 0.5, 0.9, 0.99}) {
    const double want = oracle::jackson(f, 1.7, q, 20000);
    EXPECT_NEAR(jackson_integral_zero(f, 1.7, q), want,
                5e-13 / (1.0 - std::sqrt(q)) * std::fabs(want))
        << q;
  }
}

TEST(JacksonIntegralZero, NonConvergence) {
  // Not integrable at 0: terms grow like q^{-i/2}.
  auto f = [](double x) { return 1.0 / (x * x); };
  EXPECT_THROW(jackson_integral_zero(f, 1.0, 0.5, SeriesControl{1e-15, 1e-13, 200, 3}),
               NonConvergenceError);
}

TEST(JacksonIntegralZero, NanPropagates) {
  auto f = [](double x) { return x < 0.3 ? std::nan("") : 1.0; };
  EXPECT_TRUE(std::isnan(jackson_integral_zero(f, 1.0, 0.5)));
}

TEST(JacksonIntegral, Examples) {
  auto one = [](double) { return 1.0; };
  auto id = [](double x) { return x; };
  EXPECT_EQ(jackson_integral(id, 0.7, 0.7, 0.5), 0.0);
  EXPECT_NEAR(jackson_integral(one, 0.5, 1.0, 0.5), 0.5, 1e-14);
  EXPECT_NEAR(jackson_integral(id, 1.0, 2.0, 0.5), 2.0, 1e-14);
  EXPECT_THROW(jackson_integral(id, 2.0, 1.0, 0.5), DomainError);
}

TEST(JacksonIntegral, OnLatticeFiniteSumEqualsDifference) {
  auto f = [](double x) { return std::exp(x) * x; };
  const double q = 0.7;
  const double b = 1.3;
  const double a = b * std::pow(q, 5);
  const double diff =
      oracle::jackson(f, b, q, 20000) - oracle::jackson(f, a, q, 20000);
  EXPECT_NEAR(jackson_integral(f, a, b, q), diff, 1e-13);
  // Off the lattice: plain difference of the two zero-based integrals.
  EXPECT_NEAR(jackson_integral(f, 0.31, b, q),
              oracle::jackson(f, b, q, 20000) - oracle::jackson(f, 0.31, q, 20000), 1e-13);
}

TEST(SupNorm, Examples) {
  EXPECT_EQ(sup_norm([](double) { return 0.0; }, QLattice{1.0, 0.5, 5, 0.0}), 0.0);
  EXPECT_EQ(sup_norm([](double x) { return x; }, QLattice{1.0, 0.5, 10, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(sup_norm([](double x) { return x * (1 - x); }, QLattice{1.0, 0.5, 20, 0.0}),
                   0.25);
}

// ---- properties -----------------------------------------------------------

TEST(QCalcProperty, FundamentalTheorem) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double c[5] = {u(rng), u(rng), u(rng), u(rng), u(rng)};
    auto f = [&](double x) { return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4]))); };
    const double q = 0.2 + 0.7 * (u(rng) + 1.0) / 2.0;
    const double b = 0.5 + (u(rng) + 1.0);
    auto dqf = [&](double x) { return q_derivative(f, x, q); };
    // a = 0 and a on the lattice of b
    EXPECT_NEAR(jackson_integral(dqf, 0.0, b, q), f(b) - f(0.0), 1e-9) << trial;
    const double a = b * std::pow(q, 4);
    EXPECT_NEAR(jackson_integral(dqf, a, b, q), f(b) - f(a), 1e-9) << trial;
  }
}

TEST(QCalcProperty, DoubleIntegralInterchange) {
  auto g = [](double s, double v) { return std::exp(s) * (1.0 + v * v) + s * v; };
  for (double q : {0.3, 0.6, 0.85}) {
    const double x = 1.2;
    // int_0^x int_0^v g(s, v) ds dv
    const double lhs = jackson_integral_zero(
        [&](double v) { return jackson_integral_zero([&](double s) { return g(s, v); }, v, q); },
        x, q);
    // int_0^x int_{qs}^x g(s, v) dv ds
    const double rhs = jackson_integral_zero(
        [&](double s) {
          return jackson_integral([&](double v) { return g(s, v); }, q * s, x, q);
        },
        x, q);
    EXPECT_NEAR(lhs, rhs, 1e-8 * std::fabs(lhs)) << q;
  }
}

TEST(QCalcProperty, Linearity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto f1 = [](double x) { return std::sin(x) + 2.0; };
  auto f2 = [](double x) { return x * x * x - 0.5; };
  for (int trial = 0; trial < 30; ++trial) {
    const double c1 = u(rng), c2 = u(rng);
    const double q = 0.5 + 0.2 * u(rng);
    auto combo = [&](double x) { return c1 * f1(x) + c2 * f2(x); };
    const double lhs = jackson_integral_zero(combo, 1.0, q);
    const double rhs = c1 * jackson_integral_zero(f1, 1.0, q) + c2 * jackson_integral_zero(f2, 1.0, q);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::fabs(rhs))) << trial;
  }
}

TEST(QCalcProperty, MonotoneTruncation) {
  auto f = [](double x) { return std::exp(-x) / std::pow(x, 0.4); };
  for (double q : {0.5, 0.9}) {
    SeriesControl c = SeriesControl::integration();
    const double base = jackson_integral_zero(f, 1.0, q, c);
    c.max_terms *= 2;
    EXPECT_NEAR(jackson_integral_zero(f, 1.0, q, c), base, c.rel_tol * std::fabs(base));
  }
}
