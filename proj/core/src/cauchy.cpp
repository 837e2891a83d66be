#include "qfrac/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace qfrac {
namespace {

bool nearly_equal(double x, double y) {
  return std::fabs(x - y) <= 1e-12 * std::max(std::fabs(x), std::fabs(y));
}

double lattice_tolerance(const SeriesControl& ctrl) {
  if (ctrl.abs_tol > 0.0 && ctrl.rel_tol > 0.0) return std::min(ctrl.abs_tol, ctrl.rel_tol);
  return std::max(ctrl.abs_tol, ctrl.rel_tol);
}

// C(t) from the a-priori estimate.
double growth_factor(double t, const CauchyProblem& problem, const SeriesControl& ctrl) {
  const double alpha = problem.order.value();
  const double p = problem.params.p();
  const double q = problem.params.q();
  return std::pow(q_number(p, q), 1.0 - alpha) /
         (q_number(p * alpha, q) * q_gamma(alpha, problem.params.qp(), ctrl)) *
         q_power(t, problem.a, alpha, problem.params, ctrl);
}

double bound_term(int n, double t, const CauchyProblem& problem, double A, double K,
                  const SeriesControl& ctrl) {
  if (n < 1) throw DomainError("apriori_bound: n must be positive");
  if (K == 0.0) return 0.0;
  const double c = growth_factor(t, problem, ctrl);
  return std::pow(c, n) * std::pow(A, n - 1) * K;
}

// Sample nodes: the lattice {b q^k} above a, plus a itself.
std::vector<double> sample_nodes(const CauchyProblem& problem, int lattice_depth) {
  QLattice lattice{problem.b, problem.params.q(), std::max(1, lattice_depth), problem.a};
  auto nodes = lattice.nodes();
  nodes.push_back(problem.a);
  return nodes;
}

std::vector<double> sample_values(const CauchyProblem& problem, int samples) {
  const int n = std::max(2, samples);
  std::vector<double> ys(static_cast<std::size_t>(n));
  const double lo = problem.zeta - problem.radius_r;
  const double step = 2.0 * problem.radius_r / (n - 1);
  for (int i = 0; i < n; ++i) ys[static_cast<std::size_t>(i)] = lo + step * i;
  return ys;
}

template <typename Fn>
bool try_eval(Fn&& fn, double& out) {
  try {
    out = fn();
  } catch (const Error&) {
    return false;
  }
  return std::isfinite(out);
}

}  // namespace

void CauchyProblem::validate() const {
  if (!rhs) throw DomainError("CauchyProblem: rhs is empty");
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("CauchyProblem: a must be >= 0");
  if (!(b > a) || !std::isfinite(b)) throw DomainError("CauchyProblem: b must exceed a");
  if (!std::isfinite(zeta)) throw DomainError("CauchyProblem: zeta must be finite");
  if (!(radius_r > 0.0)) throw DomainError("CauchyProblem: radius r must be positive");
  if (lipschitz_A && !(*lipschitz_A > 0.0))
    throw DomainError("CauchyProblem: Lipschitz constant must be positive");
}

TrustRegionError::TrustRegionError(double node, double value, double zeta, double radius)
    : Error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "iterate left the trust region at node t=" << node << ": u=" << value
           << ", |u - zeta| > r (zeta=" << zeta << ", r=" << radius << ")";
        return os.str();
      }()),
      node_(node),
      value_(value) {}

PicardGrid::PicardGrid(const CauchyProblem& problem, const QLattice& lattice,
                       const SeriesControl& ctrl, const SeriesControl& product_ctrl)
    : kernel_(problem.params, problem.order.value() - 1.0, 1, product_ctrl) {
  problem.validate();
  lattice.validate();
  ctrl.validate();
  const double q = problem.params.q();
  const double p = problem.params.p();
  const double Q = problem.params.qp();
  const double alpha = problem.order.value();
  if (!nearly_equal(lattice.b, problem.b) || !nearly_equal(lattice.q, q) ||
      !nearly_equal(lattice.floor_a, problem.a))
    throw DomainError("PicardGrid: lattice must have base b, ratio q and floor a of the problem");

  coefficient_ = std::pow(q_number(p, q), 1.0 - alpha) / q_gamma(alpha, Q, product_ctrl);

  const double a = problem.a;
  if (a == 0.0) {
    const double tol = lattice_tolerance(ctrl);
    const auto tail = static_cast<long>(std::ceil(std::log(tol * (1.0 - Q)) / std::log(Q)));
    if (tail > ctrl.max_terms)
      throw NonConvergenceError("PicardGrid: lattice tail exceeds max_terms", ctrl.max_terms);
    const long total = lattice.depth + std::max(tail, 1L);
    nodes_.reserve(static_cast<std::size_t>(total));
    for (long k = 0; k < total; ++k) nodes_.push_back(problem.b * std::pow(q, static_cast<double>(k)));
  } else {
    for (long k = 0;; ++k) {
      const double node = problem.b * std::pow(q, static_cast<double>(k));
      if (node < a || nearly_equal(node, a)) break;
      if (k >= ctrl.max_terms)
        throw NonConvergenceError("PicardGrid: too many lattice nodes above a", ctrl.max_terms);
      nodes_.push_back(node);
    }
    if (!lattice_offset(a, problem.b, q)) {
      // Nodes at or below a carry the constant extension u = zeta.
      floor_part_.resize(nodes_.size());
      const std::size_t n = nodes_.size();
      for (std::size_t k = 0; k < n; ++k) {
        const double t = nodes_[k];
        const double scale = std::pow(t, p * (alpha - 1.0));
        const std::size_t first_below = n - k;
        const double base = t * std::pow(q, static_cast<double>(first_below));
        auto below = [&](std::size_t j, double w) {
          return std::pow(w, p - 1.0) * problem.rhs(w, problem.zeta) * scale *
                 kernel_[first_below + j];
        };
        auto up_to_a = [&](std::size_t, double w) {
          return std::pow(w, p - 1.0) * problem.rhs(w, problem.zeta) *
                 q_power(t, q * w, alpha - 1.0, problem.params, product_ctrl);
        };
        floor_part_[k] = jackson_sum(below, base, q, ctrl) - jackson_sum(up_to_a, a, q, ctrl);
      }
    }
  }
  reported_ = std::min(lattice.nodes().size(), nodes_.size());
}

std::vector<double> picard_iterate(const PicardGrid& grid, std::span<const double> prev,
                                   const CauchyProblem& problem) {
  const std::size_t n = grid.size();
  if (prev.size() != n) throw DomainError("picard_iterate: iterate size does not match grid");
  const double q = problem.params.q();
  const double p = problem.params.p();
  const double alpha = problem.order.value();
  const auto nodes = grid.nodes();

  // Weighted integrand (1-q) w^p f(w, prev(w)); shared by every target node.
  std::vector<double> weighted(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = nodes[j];
    if (std::fabs(prev[j] - problem.zeta) > problem.radius_r)
      throw TrustRegionError(w, prev[j], problem.zeta, problem.radius_r);
    weighted[j] = (1.0 - q) * std::pow(w, p) * problem.rhs(w, prev[j]);
  }

  const auto& kernel = grid.kernel();
  std::vector<double> next(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; k + i < n; ++i) s += weighted[k + i] * kernel[i];
    const double t = nodes[k];
    next[k] = problem.zeta +
              grid.coefficient() * (std::pow(t, p * (alpha - 1.0)) * s + grid.floor_part(k));
  }
  return next;
}

SolverReport solve(const CauchyProblem& problem, const QLattice& lattice,
                   const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("solve: tol must be positive");
  if (opts.max_iter < 1) throw DomainError("solve: max_iter must be positive");
  const PicardGrid grid(problem, lattice, opts.ctrl, opts.product_ctrl);
  const std::size_t shown = grid.reported();

  SolverReport report;
  report.lattice = lattice;
  report.nodes.assign(grid.nodes().begin(), grid.nodes().begin() + static_cast<long>(shown));
  report.k_estimate = estimate_rhs_bound(problem, opts.samples, lattice.depth);
  if (problem.lipschitz_A) {
    report.lipschitz = *problem.lipschitz_A;
  } else {
    report.lipschitz = estimate_lipschitz(problem, opts.samples, lattice.depth);
    report.lipschitz_estimated = true;
  }

  std::vector<double> phi(grid.size(), opts.initial_value.value_or(problem.zeta));
  report.iterates.emplace_back(phi.begin(), phi.begin() + static_cast<long>(shown));

  for (int n = 1; n <= opts.max_iter; ++n) {
    std::vector<double> next = picard_iterate(grid, phi, problem);
    double step = 0.0;
    for (std::size_t k = 0; k < shown; ++k) step = std::max(step, std::fabs(next[k] - phi[k]));
    report.residuals.push_back(step);
    report.apriori_bounds.push_back(
        bound_term(n, problem.b, problem, report.lipschitz, report.k_estimate, opts.product_ctrl));
    phi = std::move(next);
    report.iterates.emplace_back(phi.begin(), phi.begin() + static_cast<long>(shown));
    if (step < opts.tol) {
      report.converged = true;
      break;
    }
  }
  report.iterations_used = static_cast<int>(report.residuals.size());
  report.grid_nodes.assign(grid.nodes().begin(), grid.nodes().end());
  report.grid_values = std::move(phi);

  for (std::size_t n = 0; n < report.residuals.size(); ++n) {
    const double r = report.residuals[n];
    const double bound = report.apriori_bounds[n];
    if (r <= bound) continue;
    report.bound_slack = bound > 0.0 ? std::max(report.bound_slack, r / bound - 1.0)
                                     : std::numeric_limits<double>::infinity();
  }
  return report;
}

SolverReport solve(const CauchyProblem& problem, const QLattice& lattice, double tol,
                   int max_iter, const SeriesControl& ctrl) {
  SolveOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  opts.ctrl = ctrl;
  return solve(problem, lattice, opts);
}

double apriori_bound(int n, double t, const CauchyProblem& problem, double K,
                     const SeriesControl& ctrl) {
  if (!problem.lipschitz_A)
    throw DomainError("apriori_bound: the problem carries no Lipschitz constant");
  if (!(K >= 0.0)) throw DomainError("apriori_bound: K must be nonnegative");
  return bound_term(n, t, problem, *problem.lipschitz_A, K, ctrl);
}

double q_mittag_leffler(double x, int m, FracOrder order, const QParams& params,
                        const SeriesControl& ctrl) {
  return q_mittag_leffler_any_order(x, m, order.value(), params, ctrl);
}

double q_mittag_leffler_any_order(double x, int m, double alpha, const QParams& params,
                                  const SeriesControl& ctrl) {
  if (!(x >= 0.0)) throw DomainError("q_mittag_leffler: x must be nonnegative");
  if (m < 0) throw DomainError("q_mittag_leffler: m must be nonnegative");
  if (!(alpha > 0.0)) throw DomainError("q_mittag_leffler: alpha must be positive");
  const double p = params.p();
  const double pq = q_number(p, params.q());
  double sum = 1.0;
  for (int n = 1; n <= m; ++n) {
    const double e = n * alpha;
    sum += std::pow(pq, -e) / q_gamma(e + 1.0, params.qp(), ctrl) * std::pow(x, p * e);
  }
  return sum;
}

double estimate_lipschitz(const CauchyProblem& problem, int samples, int lattice_depth) {
  const auto nodes = sample_nodes(problem, lattice_depth);
  const auto ys = sample_values(problem, samples);
  double best = 0.0;
  std::vector<double> fv(ys.size());
  std::vector<char> ok(ys.size());
  for (double w : nodes) {
    for (std::size_t i = 0; i < ys.size(); ++i)
      ok[i] = try_eval([&] { return problem.rhs(w, ys[i]); }, fv[i]);
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (!ok[i]) continue;
      for (std::size_t j = i + 1; j < ys.size(); ++j) {
        if (!ok[j]) continue;
        best = std::max(best, std::fabs(fv[i] - fv[j]) / std::fabs(ys[i] - ys[j]));
      }
    }
  }
  return best;
}

double estimate_rhs_bound(const CauchyProblem& problem, int samples, int lattice_depth) {
  const auto nodes = sample_nodes(problem, lattice_depth);
  const auto ys = sample_values(problem, samples);
  double best = 0.0;
  for (double w : nodes)
    for (double y : ys) {
      double v = 0.0;
      if (try_eval([&] { return problem.rhs(w, y); }, v)) best = std::max(best, std::fabs(v));
    }
  return best;
}

}  // namespace qfrac
