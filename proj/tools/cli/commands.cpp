#include "commands.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "output.hpp"
#include "qfrac/cauchy.hpp"
#include "qfrac/expr.hpp"
#include "qfrac/operators.hpp"
#include "verify.hpp"

namespace qfrac::cli {
namespace {

// Raised inside a command for a numerical failure; maps to exit 3.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

expr::Environment environment(const RunConfig& cfg, std::vector<std::string> vars) {
  return expr::Environment{std::move(vars), {{"q", cfg.q}, {"p", cfg.p}, {"alpha", cfg.alpha}}};
}

std::string node_text(double x) { return format_double(x); }

nlohmann::json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

nlohmann::json array_of(const std::vector<double>& xs) {
  nlohmann::json j = nlohmann::json::array();
  for (double x : xs) j.push_back(finite_or_string(x));
  return j;
}

nlohmann::json base_report(const RunConfig& cfg) {
  nlohmann::json j;
  j["schema"] = 1;
  j["config"] = config_to_json(cfg);
  return j;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.output_path.empty())
    out << content;
  else
    write_atomic(cfg.output_path, content);
}

std::string table_or_json(const RunConfig& cfg, std::string_view header,
                          const std::vector<double>& xs, const std::vector<double>& values) {
  if (cfg.format == OutputFormat::Csv) return csv_table(header, xs, values);
  auto j = base_report(cfg);
  j["nodes"] = array_of(xs);
  j["values"] = array_of(values);
  return j.dump(2) + "\n";
}

int run_eval(const RunConfig& cfg, std::ostream& out) {
  const auto f = expr::parse(cfg.function, environment(cfg, {"x"}));
  const OperatorContext ctx{QParams(cfg.q, cfg.p), cfg.a, operator_control(), product_control()};
  const FracOrder order(cfg.alpha);
  const ScalarFunction fn = [&f](double x) {
    const double slot[] = {x};
    return f.evaluate(slot);
  };
  const auto xs = QLattice{cfg.b, cfg.q, cfg.lattice_depth, cfg.a}.nodes();
  std::vector<double> values;
  values.reserve(xs.size());
  for (double x : xs) {
    try {
      if (cfg.op == "J")
        values.push_back(frac_integral(fn, x, order, ctx));
      else if (cfg.op == "D")
        values.push_back(frac_derivative_rl(fn, x, order, ctx));
      else
        values.push_back(caputo_derivative(fn, x, order, ctx));
    } catch (const Error& e) {
      throw NumericalFailure("operator " + cfg.op + " failed at node x=" + node_text(x) + ": " +
                             e.what());
    }
  }
  emit(cfg, table_or_json(cfg, "x,value", xs, values), out);
  return exit_code::ok;
}

int run_ml(const RunConfig& cfg, std::ostream& out) {
  const QParams params(cfg.q, cfg.p);
  const auto ctrl = product_control();
  const auto xs = QLattice{cfg.b, cfg.q, cfg.lattice_depth, 0.0}.nodes();
  std::vector<double> values;
  for (double x : xs) {
    try {
      values.push_back(q_mittag_leffler_any_order(x, cfg.m_terms, cfg.alpha, params, ctrl));
    } catch (const Error& e) {
      throw NumericalFailure("q-Mittag-Leffler sum failed at node x=" + node_text(x) + ": " +
                             e.what());
    }
  }
  emit(cfg, table_or_json(cfg, "x,value", xs, values), out);
  return exit_code::ok;
}

nlohmann::json solver_json(const RunConfig& cfg, const SolverReport& r) {
  auto j = base_report(cfg);
  j["residuals"] = array_of(r.residuals);
  j["apriori_bounds"] = array_of(r.apriori_bounds);
  j["converged"] = r.converged;
  j["iterations_used"] = r.iterations_used;
  j["k_estimate"] = finite_or_string(r.k_estimate);
  j["lipschitz"] = finite_or_string(r.lipschitz);
  j["lipschitz_estimated"] = r.lipschitz_estimated;
  j["bound_slack"] = finite_or_string(r.bound_slack);
  j["nodes"] = array_of(r.nodes);
  j["solution"] = array_of(r.solution());
  return j;
}

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f = expr::parse(cfg.rhs, environment(cfg, {"t", "u"}));
  CauchyProblem problem;
  problem.rhs = [&f](double t, double u) {
    const double slots[] = {t, u};
    try {
      return f.evaluate(slots);
    } catch (const expr::EvalError& e) {
      std::ostringstream os;
      os.precision(17);
      os << "rhs at t=" << t << ", u=" << u << ": " << e.what();
      throw DomainError(os.str());
    }
  };
  problem.a = cfg.a;
  problem.b = cfg.b;
  problem.zeta = cfg.zeta;
  problem.order = FracOrder(cfg.alpha);
  problem.params = QParams(cfg.q, cfg.p);
  problem.lipschitz_A = cfg.lipschitz_a;
  problem.radius_r = cfg.r;

  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.ctrl = integration_control();
  opts.product_ctrl = product_control();

  SolverReport report;
  try {
    report = solve(problem, QLattice{cfg.b, cfg.q, cfg.lattice_depth, cfg.a}, opts);
  } catch (const TrustRegionError&) {
    throw;
  } catch (const Error& e) {
    throw NumericalFailure(std::string("solve failed: ") + e.what());
  }

  const std::string report_text = solver_json(cfg, report).dump(2) + "\n";
  if (cfg.format == OutputFormat::Json) {
    emit(cfg, report_text, out);
  } else {
    emit(cfg, csv_table("x,u", report.nodes, report.solution()), out);
    if (!cfg.output_path.empty()) write_atomic(cfg.output_path + ".report.json", report_text);
  }
  if (!report.converged) {
    err << "qfrac: solve: no convergence after " << report.iterations_used
        << " iterations (last step " << format_double(report.residuals.back()) << ", tol "
        << format_double(cfg.tol) << ")\n";
    return exit_code::max_iter;
  }
  return exit_code::ok;
}

int run_verify_command(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                       const std::string& fault) {
  const auto report = run_verify(cfg, fault);
  auto j = base_report(cfg);
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& g : report.grid) grid.push_back({{"q", g.q}, {"p", g.p}, {"alpha", g.alpha}});
  j["grid"] = grid;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : report.results) results.push_back(to_json(r));
  j["identity_results"] = results;
  j["passed"] = report.passed();

  std::string content;
  if (cfg.format == OutputFormat::Json) {
    content = j.dump(2) + "\n";
  } else {
    content = "identity,max_error,tolerance,passed\n";
    for (const auto& r : report.results)
      content += r.name + "," + format_double(r.max_error) + "," + format_double(r.tolerance) + "," +
                 (r.passed ? "true" : "false") + "\n";
  }
  emit(cfg, content, out);
  if (report.passed()) return exit_code::ok;
  err << "qfrac: verify: failing identities:";
  for (const auto& r : report.results)
    if (!r.passed) err << " " << r.name;
  err << "\n";
  return exit_code::verify_failed;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err, const std::string& fault) {
  const std::string name = cfg.command ? std::string(command_name(*cfg.command)) : "qfrac";
  try {
    validate(cfg);
    switch (*cfg.command) {
      case Command::Eval: return run_eval(cfg, out);
      case Command::Solve: return run_solve(cfg, out, err);
      case Command::Verify: return run_verify_command(cfg, out, err, fault);
      case Command::Ml: return run_ml(cfg, out);
    }
  } catch (const ConfigError& e) {
    err << "qfrac: " << e.what() << "\n";
    return exit_code::config;
  } catch (const expr::ParseError& e) {
    err << "qfrac: " << e.what() << "\n";
    return exit_code::config;
  } catch (const TrustRegionError& e) {
    err << "qfrac: " << name << ": " << e.what() << "\n";
    return exit_code::trust_region;
  } catch (const NumericalFailure& e) {
    err << "qfrac: " << name << ": " << e.what() << "\n";
    return exit_code::numerical;
  } catch (const Error& e) {
    err << "qfrac: " << name << ": " << e.what() << "\n";
    return exit_code::numerical;
  }
  return exit_code::config;
}

}  // namespace qfrac::cli
