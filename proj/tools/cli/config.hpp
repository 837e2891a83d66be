#pragma once

// Run configuration: flat `key = value` text with `#` comments, or the
// "config" object of a JSON report written by an earlier run.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qfrac/errors.hpp"
#include "qfrac/qcore.hpp"

namespace qfrac::cli {

/// Invalid or unreadable configuration; maps to exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { Eval, Solve, Verify, Ml };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::optional<Command> command;
  double q = 0.5;
  double p = 1.0;
  double alpha = 0.5;
  double a = 0.0;
  double b = 1.0;
  double zeta = 1.0;
  std::string rhs;
  double r = 10.0;
  std::optional<double> lipschitz_a;
  int lattice_depth = 12;
  double tol = 1e-10;
  int max_iter = 50;
  std::string op = "J";
  std::string function;
  int m_terms = 10;

  // From the command line, not the file.
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;

  /// Keys given explicitly in the source; verify restricts its grid by them.
  std::set<std::string> explicit_keys;

  bool is_set(const std::string& key) const { return explicit_keys.count(key) > 0; }
};

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Parses `key = value` text. `origin` prefixes error messages.
RunConfig parse_config_text(std::string_view text, std::string_view origin = "config");

/// Reads the config from a JSON object of key/value pairs.
RunConfig config_from_json(const nlohmann::json& j);

/// Loads a text config or, when the file holds JSON, the embedded "config"
/// object of a report.
RunConfig load_config(const std::filesystem::path& path);

/// Field-level validation; throws ConfigError naming the offending key.
void validate(const RunConfig& cfg);

/// Fully resolved config. For verify, q/p/alpha appear only when they were
/// set, since an absent key means "whole grid".
nlohmann::json config_to_json(const RunConfig& cfg);

/// SeriesControl defaults with max_terms overridden by QFRAC_MAX_TERMS.
SeriesControl integration_control();
SeriesControl operator_control();
SeriesControl product_control();

}  // namespace qfrac::cli
