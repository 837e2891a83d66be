#include "qfrac/qcalc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfrac {
namespace {

void require_unit_q(double q, const char* where) {
  if (!(q > 0.0 && q < 1.0)) {
    std::ostringstream os;
    os << where << ": q must lie in (0,1), got " << q;
    throw DomainError(os.str());
  }
}

}  // namespace

void QLattice::validate() const {
  require_unit_q(q, "QLattice");
  if (!(b > 0.0)) throw DomainError("QLattice: base b must be positive");
  if (depth < 1) throw DomainError("QLattice: depth must be >= 1");
  if (!(floor_a >= 0.0) || !(floor_a < b))
    throw DomainError("QLattice: floor_a must satisfy 0 <= floor_a < b");
}

std::vector<double> QLattice::nodes() const {
  validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(depth));
  for (int k = 0; k < depth; ++k) {
    const double node = b * std::pow(q, k);
    if (node <= floor_a) break;
    out.push_back(node);
  }
  return out;
}

std::optional<std::size_t> lattice_offset(double a, double b, double q) {
  if (!(a > 0.0) || !(b > 0.0) || a > b) return std::nullopt;
  const double n = std::round(std::log(a / b) / std::log(q));
  if (n < 0.0) return std::nullopt;
  if (std::fabs(b * std::pow(q, n) - a) > 1e-12 * a) return std::nullopt;
  return static_cast<std::size_t>(n);
}

double q_derivative(const ScalarFunction& f, double x, double q) {
  require_unit_q(q, "q_derivative");
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "q_derivative: x must be positive, got " << x;
    throw DomainError(os.str());
  }
  return (f(x) - f(q * x)) / ((1.0 - q) * x);
}

double jackson_sum(const IndexedIntegrand& g, double b, double q,
                   const SeriesControl& ctrl, std::optional<std::size_t> terms) {
  require_unit_q(q, "jackson_sum");
  const double scale = (1.0 - q) * b;
  double sum = 0.0;
  if (terms) {
    double w = b;
    double weight = scale;
    for (std::size_t i = 0; i < *terms; ++i) {
      sum += weight * g(i, w);
      w *= q;
      weight *= q;
    }
    return sum;
  }
  ctrl.validate();
  int small = 0;
  double w = b;
  double weight = scale;
  for (long i = 0; i < ctrl.max_terms; ++i) {
    const double term = weight * g(static_cast<std::size_t>(i), w);
    sum += term;
    if (std::isnan(term)) return term;
    if (term == 0.0 || std::fabs(term) < std::max(ctrl.abs_tol, ctrl.rel_tol * std::fabs(sum))) {
      if (++small >= ctrl.consecutive_small) return sum;
    } else {
      small = 0;
    }
    w *= q;
    weight *= q;
  }
  std::ostringstream os;
  os << "jackson_sum: no convergence within " << ctrl.max_terms << " terms (b=" << b << ")";
  throw NonConvergenceError(os.str(), ctrl.max_terms);
}

double jackson_integral_zero(const ScalarFunction& f, double b, double q,
                             const SeriesControl& ctrl) {
  if (!(b > 0.0)) {
    if (b == 0.0) return 0.0;
    throw DomainError("jackson_integral_zero: upper limit must be nonnegative");
  }
  return jackson_sum([&f](std::size_t, double w) { return f(w); }, b, q, ctrl);
}

double jackson_integral(const ScalarFunction& f, double a, double b, double q,
                        const SeriesControl& ctrl) {
  if (!(a >= 0.0)) throw DomainError("jackson_integral: lower limit must be nonnegative");
  if (a == b) return 0.0;
  if (a > b) throw DomainError("jackson_integral: requires a <= b");
  if (a == 0.0) return jackson_integral_zero(f, b, q, ctrl);
  if (auto n = lattice_offset(a, b, q)) {
    return jackson_sum([&f](std::size_t, double w) { return f(w); }, b, q, ctrl, *n);
  }
  return jackson_integral_zero(f, b, q, ctrl) - jackson_integral_zero(f, a, q, ctrl);
}

double sup_norm(const ScalarFunction& f, const QLattice& lattice) {
  double m = 0.0;
  for (double x : lattice.nodes()) m = std::max(m, std::fabs(f(x)));
  return m;
}

}  // namespace qfrac
