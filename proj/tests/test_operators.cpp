#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfrac/operators.hpp"

using namespace qfrac;

namespace {

OperatorContext ctx_of(double q, double p, double a = 0.0) {
  return OperatorContext{QParams(q, p), a};
}

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST(FracOrder, OpenInterval) {
  EXPECT_THROW(FracOrder(0.0), DomainError);
  EXPECT_THROW(FracOrder(1.0), DomainError);
  EXPECT_THROW(FracOrder(-0.2), DomainError);
  EXPECT_DOUBLE_EQ(FracOrder(0.3).value(), 0.3);
}

TEST(FracIntegral, OfOne) {
  for (double p : {1.0, 2.0})
    for (double x : {1.0, 0.5, 0.0625}) {
      const auto ctx = ctx_of(0.5, p);
      const double want = oracle::frac_integral_power(x, 0.5, 0.0, 0.5, p);
      EXPECT_LT(rel_err(frac_integral([](double) { return 1.0; }, x, FracOrder(0.5), ctx), want),
                1e-12);
    }
}

TEST(FracIntegral, OfZero) {
  EXPECT_EQ(frac_integral([](double) { return 0.0; }, 0.7, FracOrder(0.4), ctx_of(0.5, 1)), 0.0);
}

TEST(FracIntegral, OfQPower) {
  // f(w) = (w^p - 0)^{(lambda)}, lambda = 0.5, alpha = 0.5, p = 2, q = 0.5, x = 1
  const QParams params(0.5, 2.0);
  const auto ctx = ctx_of(0.5, 2.0);
  auto f = [&](double w) { return q_power(w, 0.0, 0.5, params); };
  const double got = frac_integral(f, 1.0, FracOrder(0.5), ctx);
  EXPECT_LT(rel_err(got, oracle::frac_integral_power(1.0, 0.5, 0.5, 0.5, 2.0)), 1e-12);
  // Same value from the lemma's numeric left side and closed form.
  const double coef = std::pow(q_number(2.0, 0.5), 0.5) / q_gamma(0.5, 0.25);
  EXPECT_LT(rel_err(got, coef * lemma_beta_integral_numeric(0.0, 1.0, 0.5, 0.5, params)), 1e-12);
}

TEST(FracIntegral, LowerLimit) {
  const auto ctx = ctx_of(0.5, 1.0, 0.25);
  auto one = [](double) { return 1.0; };
  EXPECT_EQ(frac_integral(one, 0.25, FracOrder(0.5), ctx), 0.0);
  EXPECT_THROW(frac_integral(one, 0.2, FracOrder(0.5), ctx), DomainError);
  // J^alpha 1 about a = (x - a)^{(alpha)} [p]^{-alpha} / Gamma(alpha + 1)
  for (double a : {0.25, 0.3}) {
    const auto c = ctx_of(0.5, 1.0, a);
    const double want =
        q_power(1.0, a, 0.5, c.params) / oracle::q_gamma(1.5, 0.5);
    EXPECT_LT(rel_err(frac_integral(one, 1.0, FracOrder(0.5), c), want), 1e-12) << a;
  }
}

TEST(FracIntegral, OffLatticeLowerLimitMonomial) {
  // J^alpha applied to (w^p - a^p)^{(lambda)} about an off-lattice a.
  const QParams params(0.6, 1.5);
  const double a = 0.3;
  const auto c = OperatorContext{params, a};
  for (double lambda : {0.0, 1.0}) {
    // (w^p - a^p)^{(1)} = w^p - a^p, which stays defined below a
    auto f = [&](double w) { return lambda == 0.0 ? 1.0 : std::pow(w, 1.5) - std::pow(a, 1.5); };
    const double alpha = 0.4;
    const double want = std::pow(q_number(1.5, 0.6), 1.0 - alpha) / q_gamma(alpha, params.qp()) *
                        lemma_beta_integral(a, 1.0, alpha, lambda, params);
    EXPECT_LT(rel_err(frac_integral(f, 1.0, FracOrder(alpha), c), want), 1e-10) << lambda;
  }
}

TEST(LemmaBetaIntegral, Examples) {
  const QParams p1(0.5, 1.0);
  for (double x : {0.5, 1.0, 3.0}) EXPECT_NEAR(lemma_beta_integral(0.0, x, 1.0, 0.0, p1), x, 1e-14);
  const double want = q_gamma(0.5, 0.5) * q_gamma(1.0, 0.5) / q_gamma(1.5, 0.5);
  EXPECT_NEAR(lemma_beta_integral(0.0, 1.0, 0.5, 0.0, p1), want, 1e-13);
  EXPECT_NEAR(lemma_beta_integral_numeric(0.0, 1.0, 0.5, 0.0, p1), want, 1e-9 * want);
  EXPECT_EQ(lemma_beta_integral(0.4, 0.4, 0.5, 0.5, p1), 0.0);
  EXPECT_THROW(lemma_beta_integral(0.0, 1.0, 0.5, -1.0, p1), DomainError);
}

TEST(LemmaBetaIntegral, NonzeroLowerLimit) {
  for (double q : {0.3, 0.8})
    for (double p : {1.0, 2.0}) {
      const QParams params(q, p);
      for (double a : {q, std::pow(q, 3)}) {
        const double num = lemma_beta_integral_numeric(a, 1.0, 0.6, 0.5, params);
        const double closed = lemma_beta_integral(a, 1.0, 0.6, 0.5, params);
        EXPECT_LT(rel_err(num, closed), 1e-9) << q << " " << p << " " << a;
      }
    }
}

TEST(FracDerivativeRL, OfPowers) {
  for (double q : {0.3, 0.5, 0.9})
    for (double p : {1.0, 2.0})
      for (double alpha : {0.25, 0.5, 0.75}) {
        const auto ctx = ctx_of(q, p);
        const QParams& params = ctx.params;
        // f = x^{p alpha}: D^alpha f is constant
        auto f = [&](double w) { return q_power(w, 0.0, alpha, params); };
        const double want = oracle::frac_derivative_power(1.0, alpha, alpha, q, p);
        for (double x : {1.0, q * q})
          EXPECT_LT(rel_err(frac_derivative_rl(f, x, FracOrder(alpha), ctx), want), 1e-10);
        // f = 1
        auto one = [](double) { return 1.0; };
        EXPECT_LT(rel_err(frac_derivative_rl(one, 0.5, FracOrder(alpha), ctx),
                          oracle::frac_derivative_power(0.5, alpha, 0.0, q, p)),
                  1e-10);
      }
}

TEST(FracDerivativeRL, StencilMustStayAboveA) {
  const auto ctx = ctx_of(0.5, 1.0, 0.3);
  auto f = [](double w) { return w; };
  EXPECT_THROW(frac_derivative_rl(f, 0.5, FracOrder(0.5), ctx), DomainError);
  EXPECT_THROW(frac_derivative_rl(f, 0.3, FracOrder(0.5), ctx), DomainError);
  EXPECT_NO_THROW(frac_derivative_rl(f, 0.6, FracOrder(0.5), ctx));
}

TEST(CaputoDerivative, OfConstantIsZero) {
  auto c = [](double) { return 3.5; };
  for (double a : {0.0, 0.125}) {
    const auto ctx = ctx_of(0.5, 2.0, a);
    EXPECT_EQ(caputo_derivative(c, 1.0, FracOrder(0.5), ctx), 0.0);
    EXPECT_EQ(caputo_derivative_simplified(c, 1.0, FracOrder(0.5), ctx), 0.0);
  }
}

TEST(CaputoDerivative, OfPowers) {
  for (double p : {1.0, 2.0})
    for (double lambda : {0.5, 1.0, 2.0}) {
      const auto ctx = ctx_of(0.5, p);
      auto f = [&](double w) { return std::pow(w, p * lambda); };
      for (double x : {1.0, 0.25}) {
        const double want = oracle::frac_derivative_power(x, 0.4, lambda, 0.5, p);
        EXPECT_LT(rel_err(caputo_derivative(f, x, FracOrder(0.4), ctx), want), 1e-10);
        EXPECT_LT(rel_err(caputo_derivative_simplified(f, x, FracOrder(0.4), ctx), want), 1e-10);
      }
    }
}

TEST(CaputoDerivative, SimplifiedLinearExample) {
  // f(w) = w, p = 1, a = 0: [1]^alpha/Gamma(1-alpha) int (x - qw)^{(-alpha)} dw = x^{1-alpha}/Gamma_q(2-alpha)
  const auto ctx = ctx_of(0.5, 1.0);
  auto f = [](double w) { return w; };
  auto df = [](double) { return 1.0; };
  for (double x : {1.0, 0.5, 0.125}) {
    const double want = std::pow(x, 0.5) / oracle::q_gamma(1.5, 0.5);
    EXPECT_LT(rel_err(caputo_derivative_simplified(f, df, x, FracOrder(0.5), ctx), want), 1e-12);
  }
}

TEST(CaputoDerivative, OfFracIntegral) {
  const auto ctx = ctx_of(0.5, 1.0);
  auto g = [](double w) { return std::cos(w) + w; };
  auto jg = [&](double w) { return frac_integral(g, w, FracOrder(0.5), ctx); };
  for (double x : {1.0, 0.5, 0.25})
    EXPECT_NEAR(caputo_derivative(jg, x, FracOrder(0.5), ctx), g(x), 1e-10);
}

TEST(CaputoDerivative, CorollaryForm) {
  for (double p : {1.0, 2.0})
    for (double a : {0.0, 0.0625}) {
      const auto ctx = ctx_of(0.5, p, a);
      auto f = [](double w) { return std::exp(w) + w * w; };
      for (double x : QLattice{1.0, 0.5, 6, a}.nodes())
        EXPECT_NEAR(caputo_derivative_corollary(f, x, FracOrder(0.3), ctx),
                    caputo_derivative(f, x, FracOrder(0.3), ctx), 1e-9)
            << p << " " << a << " " << x;
    }
}

TEST(CaputoRLRelation, Examples) {
  const FracOrder half(0.5);
  // f(a) = 0
  const auto c0 = ctx_of(0.5, 1.0);
  EXPECT_NEAR(caputo_rl_relation_residual([](double w) { return w * w; }, 1.0, half, c0), 0.0, 1e-12);
  // constant
  EXPECT_NEAR(caputo_rl_relation_residual([](double) { return 2.0; }, 0.5, half, c0), 0.0, 1e-12);
  // f(w) = w, a = 0.25
  const auto c1 = ctx_of(0.5, 1.0, 0.25);
  EXPECT_LT(std::fabs(caputo_rl_relation_residual([](double w) { return w; }, 1.0, half, c1)), 1e-8);
}

TEST(BoundConstant, Examples) {
  for (double alpha : {0.25, 0.5, 0.75}) {
    const double got = bound_constant(FracOrder(alpha), ctx_of(0.5, 1.0), 1.0);
    EXPECT_LT(rel_err(got, 1.0 / oracle::q_gamma(alpha + 1.0, 0.5)), 1e-12);
  }
  const double v = bound_constant(FracOrder(0.5), ctx_of(0.5, 2.0), 1.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
  double prev = 0.0;
  for (double b : {0.5, 1.0, 1.5, 3.0}) {
    const double cur = bound_constant(FracOrder(0.5), ctx_of(0.5, 2.0), b);
    EXPECT_GE(cur, prev);
    prev = cur;
  }
  EXPECT_THROW(bound_constant(FracOrder(0.5), ctx_of(0.5, 1.0, 1.0), 1.0), DomainError);
}

TEST(InversionResiduals, Examples) {
  const QLattice lat{1.0, 0.5, 12, 0.0};
  const auto ctx = ctx_of(0.5, 1.0);
  const auto zero = inversion_residuals([](double) { return 0.0; }, lat, FracOrder(0.5), ctx);
  EXPECT_EQ(zero.caputo_of_integral, 0.0);
  EXPECT_EQ(zero.integral_of_caputo, 0.0);
  const auto cst = inversion_residuals([](double) { return 1.7; }, lat, FracOrder(0.5), ctx);
  EXPECT_LT(cst.caputo_of_integral, 1e-12);
  EXPECT_EQ(cst.integral_of_caputo, 0.0);
  const auto sq = inversion_residuals([](double w) { return w * w; }, lat, FracOrder(0.5), ctx);
  EXPECT_LT(sq.caputo_of_integral, 1e-7);
  EXPECT_LT(sq.integral_of_caputo, 1e-7);
}

TEST(InversionResiduals, LatticeBelowLimitRejected) {
  const auto ctx = ctx_of(0.5, 1.0, 0.25);
  EXPECT_THROW(inversion_residuals([](double w) { return w; }, QLattice{1.0, 0.5, 12, 0.0},
                                   FracOrder(0.5), ctx),
               DomainError);
}
