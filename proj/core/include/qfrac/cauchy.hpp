#pragma once

// Successive approximations for the Caputo q-fractional Cauchy problem
//
//   cD^alpha u(t) = f(t, u(t)),  a < t <= b,   u(a) = zeta,
//
// through its integral form u = zeta + J^alpha f(., u). Iterates live on the
// q-lattice {b q^k} so every Jackson sum only touches stored node values.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfrac/operators.hpp"

namespace qfrac {

using RhsFunction = std::function<double(double t, double u)>;

struct CauchyProblem {
  RhsFunction rhs;
  double a = 0.0;
  double b = 1.0;
  double zeta = 1.0;
  FracOrder order{0.5};
  QParams params{0.5, 1.0};
  std::optional<double> lipschitz_A;
  double radius_r = 1.0;  ///< trust region |u - zeta| <= r

  void validate() const;
};

/// An iterate left the trust region |u - zeta| <= r before f was evaluated.
class TrustRegionError : public Error {
 public:
  TrustRegionError(double node, double value, double zeta, double radius);
  double node() const noexcept { return node_; }
  double value() const noexcept { return value_; }

 private:
  double node_;
  double value_;
};

/// Node table carrying the iterates.
///
/// For a = 0 the table extends the requested lattice with a tail deep enough
/// that the dropped Jackson terms fall below the integration tolerance. For
/// a > 0 it holds every lattice node above a; when a is off the lattice, the
/// contribution of nodes at or below a (where iterates equal zeta) is fixed
/// per node and computed once.
class PicardGrid {
 public:
  PicardGrid(const CauchyProblem& problem, const QLattice& lattice,
             const SeriesControl& ctrl = SeriesControl::integration(),
             const SeriesControl& product_ctrl = SeriesControl::products());

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  /// The leading `reported()` nodes are the requested lattice.
  std::size_t reported() const noexcept { return reported_; }
  /// Fixed part of the integral at node k coming from nodes <= a.
  double floor_part(std::size_t k) const noexcept {
    return floor_part_.empty() ? 0.0 : floor_part_[k];
  }
  const QPowerLatticeTable& kernel() const noexcept { return kernel_; }
  /// [p]_q^{1-alpha} / Gamma_{q^p}(alpha).
  double coefficient() const noexcept { return coefficient_; }

 private:
  std::vector<double> nodes_;
  std::size_t reported_ = 0;
  std::vector<double> floor_part_;
  QPowerLatticeTable kernel_;
  double coefficient_ = 0.0;
};

/// One successive approximation on the grid: returns
/// zeta + J^alpha f(., prev) at every grid node.
std::vector<double> picard_iterate(const PicardGrid& grid, std::span<const double> prev,
                                   const CauchyProblem& problem);

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 50;
  SeriesControl ctrl = SeriesControl::integration();
  SeriesControl product_ctrl = SeriesControl::products();
  /// Constant first iterate; defaults to zeta.
  std::optional<double> initial_value;
  /// Grid points per axis when sampling f for K and the Lipschitz estimate.
  int samples = 33;
};

struct SolverReport {
  QLattice lattice;
  std::vector<double> nodes;
  /// iterates[0] is phi_1; each entry holds values on `nodes`.
  std::vector<std::vector<double>> iterates;
  /// residuals[n-1] = sup |phi_{n+1} - phi_n| over the lattice.
  std::vector<double> residuals;
  std::vector<double> apriori_bounds;
  bool converged = false;
  int iterations_used = 0;
  double k_estimate = 0.0;
  double lipschitz = 0.0;
  bool lipschitz_estimated = false;
  /// Smallest s >= 0 with residual_n <= bound_n (1 + s) for every n.
  double bound_slack = 0.0;
  /// Last iterate on every grid node, including the tail below the lattice.
  std::vector<double> grid_nodes;
  std::vector<double> grid_values;

  const std::vector<double>& solution() const { return iterates.back(); }
};

/// Runs successive approximations from phi_1 = zeta until the sup-norm step
/// drops below opts.tol or opts.max_iter steps were taken. A report with
/// converged == false is returned on exhaustion; TrustRegionError propagates.
SolverReport solve(const CauchyProblem& problem, const QLattice& lattice,
                   const SolveOptions& opts = {});

SolverReport solve(const CauchyProblem& problem, const QLattice& lattice, double tol,
                   int max_iter, const SeriesControl& ctrl);

/// C(t)^n A^{n-1} K with C(t) = [p]^{1-alpha} / ([p alpha] Gamma_{q^p}(alpha)) (t^p-a^p)^{(alpha)}.
/// Throws DomainError if the problem carries no Lipschitz constant.
double apriori_bound(int n, double t, const CauchyProblem& problem, double K,
                     const SeriesControl& ctrl = SeriesControl::products());

/// Partial sum sum_{n=0}^{m} [p]^{-n alpha} / Gamma_{q^p}(n alpha + 1) x^{p n alpha}.
double q_mittag_leffler(double x, int m, FracOrder order, const QParams& params,
                        const SeriesControl& ctrl = SeriesControl::products());

/// Same partial sum for any alpha > 0; alpha = 1 gives the q-exponential
/// partial sums used for the classical-limit check.
double q_mittag_leffler_any_order(double x, int m, double alpha, const QParams& params,
                                  const SeriesControl& ctrl = SeriesControl::products());

/// Largest sampled difference quotient |f(w,y1) - f(w,y2)| / |y1 - y2| over
/// lattice nodes w and y on a uniform grid of [zeta - r, zeta + r]. A lower
/// estimate of the Lipschitz constant, never a certificate. Samples where f
/// throws are skipped.
double estimate_lipschitz(const CauchyProblem& problem, int samples, int lattice_depth = 32);

/// sup |f| over the same sample set.
double estimate_rhs_bound(const CauchyProblem& problem, int samples, int lattice_depth = 32);

}  // namespace qfrac
