#pragma once

// q-analogue primitives: q-numbers, q-factorials, q-Pochhammer symbols,
// q-binomials, q-Gamma and the generalized q-power
//
//   (x^p - y^p)^{(alpha)}_{q^p} = x^{p alpha} (r; q^p)_inf / (q^{p alpha} r; q^p)_inf,
//   r = (y/x)^p.
//
// Every routine is a pure function of its arguments.

#include <cstddef>
#include <vector>

#include "qfrac/errors.hpp"

namespace qfrac {

/// Deformation pair (q, p). Requires 0 < q < 1 and p > 0.
class QParams {
 public:
  QParams(double q, double p);

  double q() const noexcept { return q_; }
  double p() const noexcept { return p_; }
  /// The lattice base q^p of every generalized power.
  double qp() const noexcept { return qp_; }

 private:
  double q_;
  double p_;
  double qp_;
};

/// Truncation policy for infinite sums and products.
struct SeriesControl {
  double abs_tol = 1e-15;
  double rel_tol = 1e-13;
  long max_terms = 5000;
  int consecutive_small = 3;

  /// Throws DomainError when the invariants are violated.
  void validate() const;

  /// Defaults for infinite products: stop once |q^j a| < 1e-17.
  static SeriesControl products();
  /// Defaults for Jackson sums.
  static SeriesControl integration();
  /// Relative threshold only. Operator integrals at small x can be far below
  /// any fixed abs_tol while their q-differences are not.
  static SeriesControl scale_free();
};

/// [a]_q = (1 - q^a) / (1 - q).
double q_number(double a, double q);

/// [n]_q! with [0]_q! = 1.
double q_factorial(long n, double q);

/// (a; q)_n = prod_{j<n} (1 - q^j a).
double q_pochhammer(double a, double q, long n);

/// (a; q)_inf, truncated once |q^j a| < ctrl.abs_tol for ctrl.consecutive_small
/// successive factors.
double q_pochhammer_inf(double a, double q,
                        const SeriesControl& ctrl = SeriesControl::products());

/// Gaussian binomial (q;q)_n / ((q;q)_{n-k} (q;q)_k).
double q_binomial(long n, long k, double q);

/// Gamma_q(t) = (q;q)_inf / (q^t;q)_inf * (1-q)^{1-t}.
/// Throws PoleError at t = 0, -1, -2, ...
double q_gamma(double t, double q,
               const SeriesControl& ctrl = SeriesControl::products());

/// Gamma_q(t) through the generalized power: (1-q)^{(t-1)} / (1-q)^{t-1}.
/// Agrees with q_gamma; kept as an independent route for cross-checks.
double q_gamma_power_form(double t, double q,
                          const SeriesControl& ctrl = SeriesControl::products());

/// (x^p - y^p)^{(alpha)}_{q^p} for 0 <= y <= x, x > 0.
/// Returns exactly 0 for y == x. Negative alpha is allowed; a vanishing
/// denominator factor raises PoleError.
double q_power(double x, double y, double alpha, const QParams& params,
               const SeriesControl& ctrl = SeriesControl::products());

/// Table of the unit-scaled q-power on a q-lattice,
///
///   value(i) = (1 - Q^{i + shift})^{(beta)}_Q,   Q = q^p,
///
/// so that (x^p - (x q^{i+shift})^p)^{(beta)}_{q^p} = x^{p beta} * value(i).
/// Entries are built from the same quotient of Pochhammer tails as q_power,
/// shared across i. Beyond the stored range the ratio is 1 to double
/// precision.
class QPowerLatticeTable {
 public:
  QPowerLatticeTable(const QParams& params, double beta, long shift,
                     const SeriesControl& ctrl = SeriesControl::products());

  double operator[](std::size_t i) const noexcept {
    return i < values_.size() ? values_[i] : 1.0;
  }
  std::size_t size() const noexcept { return values_.size(); }
  double beta() const noexcept { return beta_; }

 private:
  double beta_;
  std::vector<double> values_;
};

}  // namespace qfrac
