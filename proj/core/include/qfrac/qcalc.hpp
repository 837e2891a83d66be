#pragma once

// Jackson q-integration, the q-derivative and geometric q-lattices.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "qfrac/qcore.hpp"

namespace qfrac {

/// Real function evaluated on (subsets of) the positive half-line. Callers
/// must supply re-entrant functions if operators are used concurrently.
using ScalarFunction = std::function<double(double)>;

/// Integrand that also receives the lattice index i of the node w = b q^i.
using IndexedIntegrand = std::function<double(std::size_t i, double w)>;

/// Finite geometric lattice {b q^k : 0 <= k < depth, b q^k > floor_a}.
struct QLattice {
  double b = 1.0;
  double q = 0.5;
  int depth = 12;
  double floor_a = 0.0;

  void validate() const;
  /// Nodes in strictly decreasing order, starting at b.
  std::vector<double> nodes() const;
};

/// If a = b q^n (relative tolerance 1e-12) for some n >= 0, returns n.
std::optional<std::size_t> lattice_offset(double a, double b, double q);

/// D_q f(x) = (f(x) - f(qx)) / ((1-q) x), x > 0.
double q_derivative(const ScalarFunction& f, double x, double q);

/// (1-q) b sum_{i>=0} q^i g(i, b q^i).
///
/// With `terms` set, exactly that many terms are summed. Otherwise the sum
/// stops once |term| < max(abs_tol, rel_tol |partial|) for consecutive_small
/// successive terms (an exactly zero term always counts as small), and
/// NonConvergenceError is thrown at max_terms.
double jackson_sum(const IndexedIntegrand& g, double b, double q,
                   const SeriesControl& ctrl,
                   std::optional<std::size_t> terms = std::nullopt);

/// Jackson integral of f over [0, b].
double jackson_integral_zero(const ScalarFunction& f, double b, double q,
                             const SeriesControl& ctrl = SeriesControl::integration());

/// Jackson integral over [a, b] defined as the difference of the zero-based
/// integrals at b and a. When a sits on the q-lattice of b the common tail
/// cancels exactly, so only the nodes in (a, b] are summed.
double jackson_integral(const ScalarFunction& f, double a, double b, double q,
                        const SeriesControl& ctrl = SeriesControl::integration());

/// max |f| over the lattice nodes.
double sup_norm(const ScalarFunction& f, const QLattice& lattice);

}  // namespace qfrac
