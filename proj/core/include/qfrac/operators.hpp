#pragma once

// Generalized q-fractional integral J, the Riemann-Liouville type q-fractional
// derivative D and the Caputo type derivative.
//
// With Q = q^p and lower limit a,
//
//   J^a f(x) = [p]_q^{1-a} / Gamma_Q(a) * Int_a^x w^{p-1} f(w) (x^p - (wq)^p)^{(a-1)}_Q d_q w
//   D^a f(x) = x^{1-p} D_q (J^{1-a} f)(x)
//   cD^a f(x) = D^a (f - f(a))(x)
//
// Integrals are Jackson sums over the nodes w = x q^i. The kernel argument
// wq = x q^{i+1} stays strictly below x, so no node ever sits on a pole.

#include <utility>

#include "qfrac/qcalc.hpp"
#include "qfrac/qcore.hpp"

namespace qfrac {

/// Fractional order alpha in the open interval (0, 1).
class FracOrder {
 public:
  explicit FracOrder(double alpha);
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Parameters shared by every operator evaluation.
struct OperatorContext {
  QParams params;
  double a = 0.0;  ///< lower limit of the operators
  SeriesControl ctrl = SeriesControl::scale_free();
  SeriesControl product_ctrl = SeriesControl::products();

  void validate() const;
};

/// J^alpha f at x > a. x == a returns 0.
double frac_integral(const ScalarFunction& f, double x, FracOrder order,
                     const OperatorContext& ctx);

/// J^order f for any positive order (the semigroup and corollary checks need
/// orders outside (0,1)).
double frac_integral_any_order(const ScalarFunction& f, double x, double order,
                               const OperatorContext& ctx);

/// Int_a^x w^{p-1} g(w) (x^p - (wq)^p)^{(beta)}_{q^p} d_q w.
double kernel_integral(const ScalarFunction& g, double x, double beta,
                       const OperatorContext& ctx);

/// Closed form of the q-beta integral
///
///   Int_a^x t^{p-1} (x^p-(qt)^p)^{(alpha-1)} (t^p-a^p)^{(lambda)} d_q t
///     = 1/[p]_q * Gamma_Q(alpha) Gamma_Q(lambda+1) / Gamma_Q(alpha+lambda+1)
///       * (x^p - a^p)^{(alpha+lambda)}.
///
/// Requires alpha > 0, lambda > -1 and x > a >= 0.
double lemma_beta_integral(double a, double x, double alpha, double lambda,
                           const QParams& params,
                           const SeriesControl& ctrl = SeriesControl::products());

/// Left-hand side of the same identity by direct Jackson summation. Each
/// kernel value goes through q_power, not through the operator kernel tables.
double lemma_beta_integral_numeric(double a, double x, double alpha, double lambda,
                                   const QParams& params,
                                   const SeriesControl& ctrl = SeriesControl::integration(),
                                   const SeriesControl& product_ctrl = SeriesControl::products());

/// Riemann-Liouville type derivative D^alpha f(x). The outer q-difference
/// needs qx >= a; a DomainError is raised otherwise.
double frac_derivative_rl(const ScalarFunction& f, double x, FracOrder order,
                          const OperatorContext& ctx);

/// Caputo type derivative in its defining form D^alpha (f - f(a)).
double caputo_derivative(const ScalarFunction& f, double x, FracOrder order,
                         const OperatorContext& ctx);

/// Caputo derivative as a single fractional integral of D_q f:
///
///   [p]_q^alpha / Gamma_Q(1-alpha) * Int_a^x (D_q f)(w) (x^p - (wq)^p)^{(-alpha)} d_q w
///
/// `dqf` must be the q-derivative of f; f itself only enters through it.
double caputo_derivative_simplified(const ScalarFunction& f, const ScalarFunction& dqf,
                                    double x, FracOrder order, const OperatorContext& ctx);

/// Overload that forms D_q f with q_derivative.
double caputo_derivative_simplified(const ScalarFunction& f, double x, FracOrder order,
                                    const OperatorContext& ctx);

/// Caputo derivative as an outer derivative of an integral of D_q f:
///
///   1/[p(1-alpha)]_q * x^{1-p} D_q ( [p]_q^alpha / Gamma_Q(1-alpha)
///       * Int_a^x w^{p-1} g(w) (x^p - (wq)^p)^{(1-alpha)} d_q w ),
///   g(w) = w^{1-p} D_q f(w).
double caputo_derivative_corollary(const ScalarFunction& f, double x, FracOrder order,
                                   const OperatorContext& ctx);

/// D^alpha f(x) - cD^alpha f(x) - f(a) [p]_q^alpha / Gamma_Q(1-alpha) (x^p-a^p)^{(-alpha)}.
/// Zero up to rounding whenever both derivatives exist.
double caputo_rl_relation_residual(const ScalarFunction& f, double x, FracOrder order,
                                   const OperatorContext& ctx);

/// Operator-norm bound of J^alpha on C_q[a,b]:
/// [p]_q^{1-alpha} / ([p alpha]_q Gamma_Q(alpha)) * max_k |(x_k^p - a^p)^{(alpha)}|
/// over the lattice nodes x_k = b q^k in (a, b].
double bound_constant(FracOrder order, const OperatorContext& ctx, double b);

struct InversionResiduals {
  double caputo_of_integral = 0.0;  ///< max |cD(J f) - f|
  double integral_of_caputo = 0.0;  ///< max |J(cD f) - (f - f(a))|
};

/// Both inversion identities checked over the nodes of `lattice`.
InversionResiduals inversion_residuals(const ScalarFunction& f, const QLattice& lattice,
                                       FracOrder order, const OperatorContext& ctx);

}  // namespace qfrac
