#include "qfrac/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfrac {
namespace {

bool coincides(double x, double a) {
  return std::fabs(x - a) <= 1e-12 * std::max(std::fabs(x), std::fabs(a));
}

void require_above_floor(double x, const OperatorContext& ctx, const char* where) {
  if (x < ctx.a && !coincides(x, ctx.a)) {
    std::ostringstream os;
    os << where << ": evaluation point x=" << x << " lies below the lower limit a=" << ctx.a;
    throw DomainError(os.str());
  }
}

double q_gamma_qp(double t, const OperatorContext& ctx) {
  return q_gamma(t, ctx.params.qp(), ctx.product_ctrl);
}

// x^{1-p} D_q applied to `inner` at x; inner(a) is taken as 0.
double scaled_q_difference(const ScalarFunction& inner, double x, const OperatorContext& ctx,
                           const char* where) {
  const double q = ctx.params.q();
  const double qx = q * x;
  if (x <= ctx.a || coincides(x, ctx.a)) {
    std::ostringstream os;
    os << where << ": requires x > a (x=" << x << ", a=" << ctx.a << ")";
    throw DomainError(os.str());
  }
  if (qx < ctx.a && !coincides(qx, ctx.a)) {
    std::ostringstream os;
    os << where << ": q-difference stencil qx=" << qx << " leaves [a, x] (a=" << ctx.a << ")";
    throw DomainError(os.str());
  }
  const double upper = inner(x);
  const double lower = coincides(qx, ctx.a) ? 0.0 : inner(qx);
  return std::pow(x, 1.0 - ctx.params.p()) * (upper - lower) / ((1.0 - q) * x);
}

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "FracOrder: alpha must lie in (0,1), got " << alpha;
    throw DomainError(os.str());
  }
}

void OperatorContext::validate() const {
  if (!(a >= 0.0) || !std::isfinite(a))
    throw DomainError("OperatorContext: lower limit a must be finite and nonnegative");
  ctrl.validate();
  product_ctrl.validate();
}

double kernel_integral(const ScalarFunction& g, double x, double beta,
                       const OperatorContext& ctx) {
  ctx.validate();
  require_above_floor(x, ctx, "kernel_integral");
  if (coincides(x, ctx.a)) return 0.0;

  const QParams& params = ctx.params;
  const double p = params.p();
  const double q = params.q();
  const double scale = std::pow(x, p * beta);
  const QPowerLatticeTable kernel(params, beta, 1, ctx.product_ctrl);

  // Nodes w = x q^i: the kernel is x^{p beta} * kernel[i].
  auto on_x_lattice = [&](std::size_t i, double w) {
    return std::pow(w, p - 1.0) * g(w) * scale * kernel[i];
  };

  if (ctx.a == 0.0) return jackson_sum(on_x_lattice, x, q, ctx.ctrl);
  if (auto n = lattice_offset(ctx.a, x, q))
    return jackson_sum(on_x_lattice, x, q, ctx.ctrl, *n);

  // a off the lattice of x: subtract the zero-based integral up to a, whose
  // nodes a q^i need the kernel evaluated directly.
  auto on_a_lattice = [&](std::size_t, double w) {
    return std::pow(w, p - 1.0) * g(w) * q_power(x, q * w, beta, params, ctx.product_ctrl);
  };
  return jackson_sum(on_x_lattice, x, q, ctx.ctrl) -
         jackson_sum(on_a_lattice, ctx.a, q, ctx.ctrl);
}

double frac_integral_any_order(const ScalarFunction& f, double x, double order,
                               const OperatorContext& ctx) {
  if (!(order > 0.0)) throw DomainError("frac_integral: order must be positive");
  require_above_floor(x, ctx, "frac_integral");
  if (coincides(x, ctx.a)) return 0.0;
  const double coef =
      std::pow(q_number(ctx.params.p(), ctx.params.q()), 1.0 - order) / q_gamma_qp(order, ctx);
  return coef * kernel_integral(f, x, order - 1.0, ctx);
}

double frac_integral(const ScalarFunction& f, double x, FracOrder order,
                     const OperatorContext& ctx) {
  return frac_integral_any_order(f, x, order.value(), ctx);
}

double lemma_beta_integral(double a, double x, double alpha, double lambda,
                           const QParams& params, const SeriesControl& ctrl) {
  if (!(alpha > 0.0)) throw DomainError("lemma_beta_integral: alpha must be positive");
  if (!(lambda > -1.0)) throw DomainError("lemma_beta_integral: lambda must exceed -1");
  if (!(a >= 0.0) || x < a) throw DomainError("lemma_beta_integral: requires x >= a >= 0");
  const double Q = params.qp();
  const double ratio = q_gamma(alpha, Q, ctrl) * q_gamma(lambda + 1.0, Q, ctrl) /
                       q_gamma(alpha + lambda + 1.0, Q, ctrl);
  return ratio / q_number(params.p(), params.q()) * q_power(x, a, alpha + lambda, params, ctrl);
}

double lemma_beta_integral_numeric(double a, double x, double alpha, double lambda,
                                   const QParams& params, const SeriesControl& ctrl,
                                   const SeriesControl& product_ctrl) {
  const double p = params.p();
  const double q = params.q();
  auto integrand = [&](double t) {
    return std::pow(t, p - 1.0) * q_power(x, q * t, alpha - 1.0, params, product_ctrl) *
           q_power(t, a, lambda, params, product_ctrl);
  };
  return jackson_integral(integrand, a, x, q, ctrl);
}

double frac_derivative_rl(const ScalarFunction& f, double x, FracOrder order,
                          const OperatorContext& ctx) {
  const double complement = 1.0 - order.value();
  auto inner = [&](double s) { return frac_integral_any_order(f, s, complement, ctx); };
  return scaled_q_difference(inner, x, ctx, "frac_derivative_rl");
}

double caputo_derivative(const ScalarFunction& f, double x, FracOrder order,
                         const OperatorContext& ctx) {
  const double fa = f(ctx.a);
  auto shifted = [&](double w) { return f(w) - fa; };
  return frac_derivative_rl(shifted, x, order, ctx);
}

double caputo_derivative_simplified(const ScalarFunction& /*f*/, const ScalarFunction& dqf,
                                    double x, FracOrder order, const OperatorContext& ctx) {
  require_above_floor(x, ctx, "caputo_derivative_simplified");
  if (coincides(x, ctx.a)) return 0.0;
  const double alpha = order.value();
  const double p = ctx.params.p();
  const double coef =
      std::pow(q_number(p, ctx.params.q()), alpha) / q_gamma_qp(1.0 - alpha, ctx);
  auto g = [&](double w) { return std::pow(w, 1.0 - p) * dqf(w); };
  return coef * kernel_integral(g, x, -alpha, ctx);
}

double caputo_derivative_simplified(const ScalarFunction& f, double x, FracOrder order,
                                    const OperatorContext& ctx) {
  const double q = ctx.params.q();
  auto dqf = [&](double w) { return q_derivative(f, w, q); };
  return caputo_derivative_simplified(f, dqf, x, order, ctx);
}

double caputo_derivative_corollary(const ScalarFunction& f, double x, FracOrder order,
                                   const OperatorContext& ctx) {
  const double alpha = order.value();
  const double p = ctx.params.p();
  const double q = ctx.params.q();
  const double coef = std::pow(q_number(p, q), alpha) / q_gamma_qp(1.0 - alpha, ctx);
  auto g = [&](double w) { return std::pow(w, 1.0 - p) * q_derivative(f, w, q); };
  auto inner = [&](double s) {
    if (coincides(s, ctx.a)) return 0.0;
    return coef * kernel_integral(g, s, 1.0 - alpha, ctx);
  };
  return scaled_q_difference(inner, x, ctx, "caputo_derivative_corollary") /
         q_number(p * (1.0 - alpha), q);
}

double caputo_rl_relation_residual(const ScalarFunction& f, double x, FracOrder order,
                                   const OperatorContext& ctx) {
  const double alpha = order.value();
  const double p = ctx.params.p();
  const double rl = frac_derivative_rl(f, x, order, ctx);
  const double caputo = caputo_derivative(f, x, order, ctx);
  const double constant_part = f(ctx.a) * std::pow(q_number(p, ctx.params.q()), alpha) /
                               q_gamma_qp(1.0 - alpha, ctx) *
                               q_power(x, ctx.a, -alpha, ctx.params, ctx.product_ctrl);
  return rl - caputo - constant_part;
}

double bound_constant(FracOrder order, const OperatorContext& ctx, double b) {
  ctx.validate();
  if (!(b > ctx.a)) throw DomainError("bound_constant: requires b > a");
  const double alpha = order.value();
  const double p = ctx.params.p();
  const double q = ctx.params.q();
  double peak = 0.0;
  const QLattice lattice{b, q, 256, ctx.a};
  for (double x : lattice.nodes())
    peak = std::max(peak, std::fabs(q_power(x, ctx.a, alpha, ctx.params, ctx.product_ctrl)));
  return std::pow(q_number(p, q), 1.0 - alpha) /
         (q_number(p * alpha, q) * q_gamma_qp(alpha, ctx)) * peak;
}

InversionResiduals inversion_residuals(const ScalarFunction& f, const QLattice& lattice,
                                       FracOrder order, const OperatorContext& ctx) {
  if (lattice.floor_a < ctx.a)
    throw DomainError("inversion_residuals: lattice floor lies below the operator limit a");
  auto jf = [&](double w) { return frac_integral(f, w, order, ctx); };
  auto cdf = [&](double w) { return caputo_derivative(f, w, order, ctx); };
  const double fa = f(ctx.a);
  InversionResiduals out;
  for (double x : lattice.nodes()) {
    out.caputo_of_integral =
        std::max(out.caputo_of_integral, std::fabs(caputo_derivative(jf, x, order, ctx) - f(x)));
    out.integral_of_caputo = std::max(
        out.integral_of_caputo, std::fabs(frac_integral(cdf, x, order, ctx) - (f(x) - fa)));
  }
  return out;
}

}  // namespace qfrac
