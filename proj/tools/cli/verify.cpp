#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qfrac/cauchy.hpp"
#include "qfrac/operators.hpp"

namespace qfrac::cli {
namespace {

constexpr double kFaultBias = 1e-3;

// Running maximum of the comparison error for one identity.
struct Check {
  bool relative = true;
  double bias = 0.0;
  double worst = 0.0;
  int cases = 0;

  void compare(double computed, double reference) {
    computed += bias * (1.0 + std::fabs(reference));
    double err = std::fabs(computed - reference);
    if (relative) err /= std::max(std::fabs(reference), std::numeric_limits<double>::min());
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    worst = std::max(worst, err);
    ++cases;
  }

  // Inequality lhs <= rhs, scored by the relative excess.
  void at_most(double lhs, double rhs) {
    lhs += bias * (1.0 + std::fabs(rhs));
    double excess = std::max(0.0, lhs - rhs) / std::max(std::fabs(rhs), 1e-300);
    if (std::isnan(excess)) excess = std::numeric_limits<double>::infinity();
    worst = std::max(worst, excess);
    ++cases;
  }
};

struct Env {
  SeriesControl ctrl;  // operators
  SeriesControl solver_ctrl;
  SeriesControl pctrl;
  double b;
};

struct Identity {
  std::string name;
  std::string kind;
  double tolerance;
  std::function<void(const GridPoint&, const Env&, Check&)> run;
};

OperatorContext context(const GridPoint& g, const Env& env, double a) {
  return OperatorContext{QParams(g.q, g.p), a, env.ctrl, env.pctrl};
}

// Test functions for the operator identities: monomials about 0 and a
// q-power about an on-lattice lower limit.
struct TestFunction {
  ScalarFunction f;
  double a;
};

std::vector<TestFunction> operator_family(const GridPoint& g, const Env& env) {
  const QParams params(g.q, g.p);
  const double a = env.b * std::pow(g.q, 12);
  const SeriesControl pctrl = env.pctrl;
  return {
      {[](double x) { return x * x; }, 0.0},
      {[](double x) { return 1.0 + x * x * x; }, 0.0},
      {[a, params, pctrl](double x) { return x <= a ? 0.0 : q_power(x, a, 1.5, params, pctrl); }, a},
  };
}

std::vector<double> nodes_above(double b, double q, int depth, double a) {
  return QLattice{b, q, depth, a}.nodes();
}

std::vector<Identity> registry() {
  std::vector<Identity> ids;

  ids.push_back({"qgamma_recurrence", "relative", 1e-10, [](const GridPoint& g, const Env& env, Check& c) {
                   const double Q = std::pow(g.q, g.p);
                   for (double t : {g.alpha, 1.0 + g.alpha, 2.5 + g.alpha, 4.2})
                     c.compare(q_gamma(t + 1.0, Q, env.pctrl), q_number(t, Q) * q_gamma(t, Q, env.pctrl));
                 }});

  ids.push_back({"qgamma_factorial", "relative", 1e-12, [](const GridPoint& g, const Env& env, Check& c) {
                   const double Q = std::pow(g.q, g.p);
                   for (long n = 0; n <= 8; ++n)
                     c.compare(q_gamma(static_cast<double>(n) + 1.0, Q, env.pctrl), q_factorial(n, Q));
                 }});

  ids.push_back({"qgamma_power_form", "relative", 1e-10, [](const GridPoint& g, const Env& env, Check& c) {
                   const double Q = std::pow(g.q, g.p);
                   for (double t : {g.alpha, 1.0 + g.alpha, 3.5})
                     c.compare(q_gamma_power_form(t, Q, env.pctrl), q_gamma(t, Q, env.pctrl));
                 }});

  ids.push_back({"qpower_x_derivative", "relative", 1e-8, [](const GridPoint& g, const Env& env, Check& c) {
                   const QParams params(g.q, g.p);
                   const double q = g.q;
                   const double p = g.p;
                   for (double beta : {g.alpha, 1.0 + g.alpha})
                     for (double x : {1.0, 0.6})
                       for (double s : {0.0, 0.3, 0.8}) {
                         const double y = s * q * x;
                         const double lhs = (q_power(x, y, beta, params, env.pctrl) -
                                             q_power(q * x, y, beta, params, env.pctrl)) /
                                            ((1.0 - q) * x);
                         const double rhs = std::pow(x, p - 1.0) * q_number(p * beta, q) *
                                            q_power(x, y, beta - 1.0, params, env.pctrl);
                         c.compare(lhs, rhs);
                       }
                 }});

  ids.push_back({"qpower_y_derivative", "relative", 1e-8, [](const GridPoint& g, const Env& env, Check& c) {
                   const QParams params(g.q, g.p);
                   const double q = g.q;
                   const double p = g.p;
                   for (double beta : {g.alpha, 1.0 + g.alpha})
                     for (double x : {1.0, 0.6})
                       for (double s : {0.3, 0.8}) {
                         const double y = s * x;
                         const double lhs = (q_power(x, y, beta, params, env.pctrl) -
                                             q_power(x, q * y, beta, params, env.pctrl)) /
                                            ((1.0 - q) * y);
                         const double rhs = -std::pow(y, p - 1.0) * q_number(p * beta, q) *
                                            q_power(x, q * y, beta - 1.0, params, env.pctrl);
                         c.compare(lhs, rhs);
                       }
                 }});

  ids.push_back({"beta_integral_lemma", "relative", 1e-9, [](const GridPoint& g, const Env& env, Check& c) {
                   const QParams params(g.q, g.p);
                   for (double x : {0.5, 1.0, 2.0})
                     for (double lambda : {0.0, 0.5, 1.0})
                       c.compare(lemma_beta_integral_numeric(0.0, x, g.alpha, lambda, params, env.ctrl, env.pctrl),
                                 lemma_beta_integral(0.0, x, g.alpha, lambda, params, env.pctrl));
                 }});

  ids.push_back({"caputo_equivalence", "absolute", 1e-8, [](const GridPoint& g, const Env& env, Check& c) {
                   const FracOrder order(g.alpha);
                   for (const auto& tf : operator_family(g, env)) {
                     const auto ctx = context(g, env, tf.a);
                     for (double x : nodes_above(env.b, g.q, 12, tf.a))
                       c.compare(caputo_derivative_simplified(tf.f, x, order, ctx),
                                 caputo_derivative(tf.f, x, order, ctx));
                   }
                 }});

  ids.push_back({"caputo_corollary", "absolute", 1e-8, [](const GridPoint& g, const Env& env, Check& c) {
                   const FracOrder order(g.alpha);
                   for (const auto& tf : operator_family(g, env)) {
                     const auto ctx = context(g, env, tf.a);
                     for (double x : nodes_above(env.b, g.q, 12, tf.a))
                       c.compare(caputo_derivative_corollary(tf.f, x, order, ctx),
                                 caputo_derivative(tf.f, x, order, ctx));
                   }
                 }});

  // D f and cD f grow like x^{-p alpha} near 0, so the residual is scaled by
  // max(1, |D f|).
  ids.push_back({"rl_caputo_relation", "mixed", 1e-10, [](const GridPoint& g, const Env& env, Check& c) {
                   const FracOrder order(g.alpha);
                   auto f = [](double x) { return 1.0 + x * x; };
                   for (double a : {0.0, env.b * std::pow(g.q, 3)}) {
                     const auto ctx = context(g, env, a);
                     for (double x : nodes_above(env.b, g.q, 12, a)) {
                       const double scale = std::max(1.0, std::fabs(frac_derivative_rl(f, x, order, ctx)));
                       c.compare(caputo_rl_relation_residual(f, x, order, ctx) / scale, 0.0);
                     }
                   }
                 }});

  ids.push_back({"integral_boundedness", "excess", 1e-12, [](const GridPoint& g, const Env& env, Check& c) {
                   const FracOrder order(g.alpha);
                   const auto ctx = context(g, env, 0.0);
                   const double bound = bound_constant(order, ctx, env.b);
                   const std::vector<ScalarFunction> family = {
                       [](double) { return 1.0; },
                       [](double x) { return 1.0 - x * x; },
                       [](double x) { return x * x * x * x - x; },
                       [](double x) { return 0.3 - 2.0 * x + x * x * x; },
                   };
                   const QLattice fine{env.b, g.q, 2000, 0.0};
                   const QLattice coarse{env.b, g.q, 12, 0.0};
                   for (const auto& f : family) {
                     const double fnorm = std::max(sup_norm(f, fine), std::fabs(f(0.0)));
                     const double jnorm =
                         sup_norm([&](double x) { return frac_integral(f, x, order, ctx); }, coarse);
                     c.at_most(jnorm, bound * fnorm);
                   }
                 }});

  auto inversion = [](bool of_integral) {
    return [of_integral](const GridPoint& g, const Env& env, Check& c) {
      const FracOrder order(g.alpha);
      for (const auto& tf : operator_family(g, env)) {
        const auto ctx = context(g, env, tf.a);
        const QLattice lattice{env.b, g.q, 12, tf.a};
        const auto res = inversion_residuals(tf.f, lattice, order, ctx);
        c.compare(of_integral ? res.caputo_of_integral : res.integral_of_caputo, 0.0);
      }
    };
  };
  ids.push_back({"caputo_of_integral", "absolute", 1e-7, inversion(true)});
  ids.push_back({"integral_of_caputo", "absolute", 1e-7, inversion(false)});

  ids.push_back({"integral_semigroup", "relative", 1e-8, [](const GridPoint& g, const Env& env, Check& c) {
                   const auto ctx = context(g, env, 0.0);
                   const double beta = 0.6;
                   auto f = [](double x) { return 1.0 + x; };
                   auto jb = [&](double w) { return frac_integral_any_order(f, w, beta, ctx); };
                   for (double x : nodes_above(env.b, g.q, 4, 0.0))
                     c.compare(frac_integral_any_order(jb, x, g.alpha, ctx),
                               frac_integral_any_order(f, x, g.alpha + beta, ctx));
                 }});

  ids.push_back({"mittag_leffler_iterates", "absolute", 1e-9, [](const GridPoint& g, const Env& env, Check& c) {
                   CauchyProblem problem;
                   problem.rhs = [](double, double u) { return u; };
                   problem.b = env.b;
                   problem.zeta = 1.0;
                   problem.order = FracOrder(g.alpha);
                   problem.params = QParams(g.q, g.p);
                   problem.radius_r = 1e3;
                   SolveOptions opts;
                   opts.tol = 1e-10;
                   opts.max_iter = 400;
                   opts.ctrl = env.solver_ctrl;
                   opts.product_ctrl = env.pctrl;
                   const QLattice lattice{env.b, g.q, 12, 0.0};
                   const auto report = solve(problem, lattice, opts);
                   // iterates[n] is phi_{n+1}, the partial sum with n terms past 1.
                   for (std::size_t n = 0; n < report.iterates.size(); ++n)
                     for (std::size_t k = 0; k < report.nodes.size(); ++k)
                       c.compare(report.iterates[n][k],
                                 q_mittag_leffler(report.nodes[k], static_cast<int>(n),
                                                  problem.order, problem.params, env.pctrl));
                   if (!report.converged) c.compare(std::numeric_limits<double>::infinity(), 0.0);
                 }});

  return ids;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::vector<std::string> identity_names() {
  std::vector<std::string> names;
  for (const auto& id : registry()) names.push_back(id.name);
  return names;
}

std::vector<GridPoint> verify_grid(const RunConfig& cfg) {
  std::vector<double> qs{0.3, 0.5, 0.9};
  std::vector<double> ps{1.0, 2.0};
  std::vector<double> alphas{0.25, 0.5, 0.75};
  if (cfg.is_set("q")) qs = {cfg.q};
  if (cfg.is_set("p")) ps = {cfg.p};
  if (cfg.is_set("alpha")) alphas = {cfg.alpha};
  std::vector<GridPoint> grid;
  for (double q : qs)
    for (double p : ps)
      for (double alpha : alphas) grid.push_back({q, p, alpha});
  return grid;
}

VerifyReport run_verify(const RunConfig& cfg, const std::string& fault) {
  const auto ids = registry();
  if (!fault.empty() &&
      std::none_of(ids.begin(), ids.end(), [&](const auto& id) { return id.name == fault; }))
    throw ConfigError("inject-fault: unknown identity '" + fault + "'");

  VerifyReport report;
  report.grid = verify_grid(cfg);
  const Env env{operator_control(), integration_control(), product_control(), cfg.b};
  for (const auto& id : ids) {
    IdentityResult r;
    r.name = id.name;
    r.error_kind = id.kind;
    r.tolerance = id.tolerance;
    for (const auto& g : report.grid) {
      Check c;
      c.relative = id.kind == "relative";
      c.bias = id.name == fault ? kFaultBias : 0.0;
      try {
        id.run(g, env, c);
      } catch (const Error& e) {
        r.failure = e.what();
        c.worst = std::numeric_limits<double>::infinity();
      }
      r.cases += c.cases;
      if (!r.worst || c.worst > r.max_error) {
        r.max_error = c.worst;
        r.worst = g;
      }
    }
    r.passed = r.max_error <= r.tolerance;
    report.results.push_back(std::move(r));
  }
  return report;
}

nlohmann::json to_json(const IdentityResult& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["error_kind"] = r.error_kind;
  j["tolerance"] = r.tolerance;
  j["max_error"] = std::isfinite(r.max_error) ? nlohmann::json(r.max_error) : nlohmann::json("inf");
  j["passed"] = r.passed;
  j["cases"] = r.cases;
  if (r.worst) j["worst_case"] = {{"q", r.worst->q}, {"p", r.worst->p}, {"alpha", r.worst->alpha}};
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

}  // namespace qfrac::cli
