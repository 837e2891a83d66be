#include "qfrac/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qfrac {
namespace {

constexpr double kPoleEps = 1e-13;

void require_unit_q(double q, const char* where) {
  if (!(q > 0.0 && q < 1.0)) {
    std::ostringstream os;
    os << where << ": q must lie in (0,1), got " << q;
    throw DomainError(os.str());
  }
}

bool is_nonpositive_integer(double t) {
  const double r = std::round(t);
  return r <= 0.0 && std::fabs(t - r) < 1e-12;
}

// (a;Q)_inf / (b;Q)_inf evaluated as one running product of factor ratios so
// that neither Pochhammer symbol can underflow on its own for Q near 1.
double pochhammer_ratio(double a, double b, double Q, const SeriesControl& ctrl,
                        const char* where) {
  double num_term = a;
  double den_term = b;
  double ratio = 1.0;
  int small = 0;
  for (long j = 0; j < ctrl.max_terms; ++j) {
    const double den = 1.0 - den_term;
    if (std::fabs(den) < kPoleEps) {
      std::ostringstream os;
      os << where << ": denominator factor vanishes at j=" << j;
      throw PoleError(os.str());
    }
    ratio *= (1.0 - num_term) / den;
    if (std::fabs(num_term) < ctrl.abs_tol && std::fabs(den_term) < ctrl.abs_tol) {
      if (++small >= ctrl.consecutive_small) return ratio;
    } else {
      small = 0;
    }
    num_term *= Q;
    den_term *= Q;
  }
  std::ostringstream os;
  os << where << ": product did not converge within " << ctrl.max_terms << " factors";
  throw NonConvergenceError(os.str(), ctrl.max_terms);
}

}  // namespace

QParams::QParams(double q, double p) : q_(q), p_(p) {
  require_unit_q(q, "QParams");
  if (!(p > 0.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "QParams: p must be positive, got " << p;
    throw DomainError(os.str());
  }
  qp_ = std::pow(q, p);
}

void SeriesControl::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
    throw DomainError("SeriesControl: tolerances must be nonnegative");
  if (abs_tol == 0.0 && rel_tol == 0.0)
    throw DomainError("SeriesControl: abs_tol and rel_tol cannot both be zero");
  if (consecutive_small < 1)
    throw DomainError("SeriesControl: consecutive_small must be positive");
  if (max_terms < consecutive_small)
    throw DomainError("SeriesControl: max_terms must be >= consecutive_small");
}

SeriesControl SeriesControl::products() { return {1e-17, 0.0, 10000, 3}; }

SeriesControl SeriesControl::integration() { return {1e-15, 1e-13, 5000, 3}; }

SeriesControl SeriesControl::scale_free() { return {0.0, 1e-13, 5000, 3}; }

double q_number(double a, double q) {
  require_unit_q(q, "q_number");
  return -std::expm1(a * std::log(q)) / (1.0 - q);
}

double q_factorial(long n, double q) {
  require_unit_q(q, "q_factorial");
  if (n < 0) throw DomainError("q_factorial: n must be nonnegative");
  double r = 1.0;
  for (long k = 2; k <= n; ++k) r *= q_number(static_cast<double>(k), q);
  return r;
}

double q_pochhammer(double a, double q, long n) {
  require_unit_q(q, "q_pochhammer");
  if (n < 0) throw DomainError("q_pochhammer: n must be nonnegative");
  double r = 1.0;
  double term = a;
  for (long j = 0; j < n; ++j) {
    r *= 1.0 - term;
    term *= q;
  }
  return r;
}

double q_pochhammer_inf(double a, double q, const SeriesControl& ctrl) {
  require_unit_q(q, "q_pochhammer_inf");
  ctrl.validate();
  double r = 1.0;
  double term = a;
  int small = 0;
  for (long j = 0; j < ctrl.max_terms; ++j) {
    r *= 1.0 - term;
    if (r == 0.0) return 0.0;
    if (std::fabs(term) < ctrl.abs_tol) {
      if (++small >= ctrl.consecutive_small) return r;
    } else {
      small = 0;
    }
    term *= q;
  }
  throw NonConvergenceError("q_pochhammer_inf: product did not converge", ctrl.max_terms);
}

double q_binomial(long n, long k, double q) {
  require_unit_q(q, "q_binomial");
  if (n < 0 || k < 0 || k > n)
    throw DomainError("q_binomial: requires 0 <= k <= n");
  return q_pochhammer(q, q, n) / (q_pochhammer(q, q, n - k) * q_pochhammer(q, q, k));
}

double q_gamma(double t, double q, const SeriesControl& ctrl) {
  require_unit_q(q, "q_gamma");
  ctrl.validate();
  if (is_nonpositive_integer(t)) {
    std::ostringstream os;
    os << "q_gamma: pole at t=" << t;
    throw PoleError(os.str());
  }
  return pochhammer_ratio(q, std::pow(q, t), q, ctrl, "q_gamma") *
         std::pow(1.0 - q, 1.0 - t);
}

double q_gamma_power_form(double t, double q, const SeriesControl& ctrl) {
  if (is_nonpositive_integer(t)) {
    std::ostringstream os;
    os << "q_gamma_power_form: pole at t=" << t;
    throw PoleError(os.str());
  }
  const QParams unit(q, 1.0);
  return q_power(1.0, q, t - 1.0, unit, ctrl) / std::pow(1.0 - q, t - 1.0);
}

double q_power(double x, double y, double alpha, const QParams& params,
               const SeriesControl& ctrl) {
  ctrl.validate();
  if (!(x > 0.0)) throw DomainError("q_power: x must be positive");
  if (!(y >= 0.0)) throw DomainError("q_power: y must be nonnegative");
  if (y > x) {
    std::ostringstream os;
    os << "q_power: y=" << y << " exceeds x=" << x;
    throw DomainError(os.str());
  }
  if (y == x) return 0.0;
  const double p = params.p();
  const double Q = params.qp();
  const double lead = std::pow(x, p * alpha);
  if (y == 0.0) return lead;
  const double r = std::pow(y / x, p);
  return lead * pochhammer_ratio(r, std::pow(Q, alpha) * r, Q, ctrl, "q_power");
}

QPowerLatticeTable::QPowerLatticeTable(const QParams& params, double beta, long shift,
                                       const SeriesControl& ctrl)
    : beta_(beta) {
  ctrl.validate();
  if (shift < 0) throw DomainError("QPowerLatticeTable: shift must be nonnegative");
  const double Q = params.qp();
  const double qb = std::pow(Q, beta);
  // First index whose numerator and denominator terms are both below abs_tol.
  long tail = 0;
  while (std::max(1.0, qb) * std::pow(Q, static_cast<double>(tail + shift)) >= ctrl.abs_tol) {
    if (++tail > ctrl.max_terms)
      throw NonConvergenceError("QPowerLatticeTable: lattice tail too long", ctrl.max_terms);
  }
  const std::size_t n = static_cast<std::size_t>(tail + ctrl.consecutive_small);
  values_.assign(n, 1.0);
  double acc = 1.0;
  for (std::size_t i = n; i-- > 0;) {
    const double e = static_cast<double>(i) + static_cast<double>(shift);
    const double num_term = std::pow(Q, e);
    const double den_term = qb * num_term;
    const double den = 1.0 - den_term;
    if (std::fabs(den) < kPoleEps) {
      std::ostringstream os;
      os << "QPowerLatticeTable: pole at lattice index " << i;
      throw PoleError(os.str());
    }
    acc *= (1.0 - num_term) / den;
    values_[i] = acc;
  }
}

}  // namespace qfrac
