#include "config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qfrac/expr.hpp"

namespace qfrac::cli {
namespace {

constexpr std::string_view kKeys[] = {
    "command", "q",   "p",             "alpha", "a",        "b",        "zeta",     "rhs",
    "r",       "lipschitz_a", "lattice_depth", "tol", "max_iter", "operator", "function", "m_terms",
};

bool known_key(std::string_view key) {
  for (auto k : kKeys)
    if (k == key) return true;
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  return out;
}

int to_int(std::string_view key, std::string_view value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
  return out;
}

void assign(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "command") {
    auto c = parse_command(value);
    if (!c) throw ConfigError("command: expected one of eval, solve, verify, ml; got '" + value + "'");
    cfg.command = c;
  } else if (key == "q") cfg.q = to_double(key, value);
  else if (key == "p") cfg.p = to_double(key, value);
  else if (key == "alpha") cfg.alpha = to_double(key, value);
  else if (key == "a") cfg.a = to_double(key, value);
  else if (key == "b") cfg.b = to_double(key, value);
  else if (key == "zeta") cfg.zeta = to_double(key, value);
  else if (key == "rhs") cfg.rhs = value;
  else if (key == "r") cfg.r = to_double(key, value);
  else if (key == "lipschitz_a") cfg.lipschitz_a = to_double(key, value);
  else if (key == "lattice_depth") cfg.lattice_depth = to_int(key, value);
  else if (key == "tol") cfg.tol = to_double(key, value);
  else if (key == "max_iter") cfg.max_iter = to_int(key, value);
  else if (key == "operator") cfg.op = value;
  else if (key == "function") cfg.function = value;
  else if (key == "m_terms") cfg.m_terms = to_int(key, value);
  cfg.explicit_keys.insert(key);
}

void check_expression(const std::string& key, const std::string& source,
                      const std::vector<std::string>& vars) {
  if (source.empty()) throw ConfigError(key + ": required");
  try {
    expr::parse(source, expr::Environment{vars, {{"q", 0.0}, {"p", 0.0}, {"alpha", 0.0}}});
  } catch (const expr::ParseError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

long max_terms_override() {
  const char* env = std::getenv("QFRAC_MAX_TERMS");
  if (!env || !*env) return 0;
  long v = 0;
  std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1)
    throw ConfigError("QFRAC_MAX_TERMS: expected a positive integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Eval: return "eval";
    case Command::Solve: return "solve";
    case Command::Verify: return "verify";
    case Command::Ml: return "ml";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  if (name == "eval") return Command::Eval;
  if (name == "solve") return Command::Solve;
  if (name == "verify") return Command::Verify;
  if (name == "ml") return Command::Ml;
  return std::nullopt;
}

RunConfig parse_config_text(std::string_view text, std::string_view origin) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_key(key)) throw ConfigError(where + "unknown key '" + key + "'");
    if (cfg.is_set(key)) throw ConfigError(where + "duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(where + key + ": missing value");
    try {
      assign(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (!known_key(key)) throw ConfigError("config: unknown key '" + key + "'");
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number_integer()) {
      text = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      // Round-trip exactly through text.
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
      text = buf;
    } else {
      throw ConfigError("config: key '" + key + "' must be a string or number");
    }
    assign(cfg, key, text);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
    return config_from_json(j.contains("config") ? j.at("config") : j);
  }
  return parse_config_text(text, path.string());
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& key, const std::string& msg, double v) {
    std::ostringstream os;
    os.precision(17);
    os << key << ": " << msg << ", got " << v;
    throw ConfigError(os.str());
  };
  if (!cfg.command) throw ConfigError("command: required (eval, solve, verify or ml)");
  if (!(cfg.q > 0.0 && cfg.q < 1.0)) fail("q", "must lie in (0,1)", cfg.q);
  if (!(cfg.p > 0.0) || !std::isfinite(cfg.p)) fail("p", "must be positive", cfg.p);
  if (*cfg.command == Command::Ml) {
    if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) fail("alpha", "must be positive", cfg.alpha);
  } else if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    fail("alpha", "must lie in (0,1)", cfg.alpha);
  }
  if (!(cfg.a >= 0.0) || !std::isfinite(cfg.a)) fail("a", "must be finite and nonnegative", cfg.a);
  if (!(cfg.b > cfg.a) || !std::isfinite(cfg.b)) fail("b", "must be finite and exceed a", cfg.b);
  if (!std::isfinite(cfg.zeta)) fail("zeta", "must be finite", cfg.zeta);
  if (!(cfg.r > 0.0)) fail("r", "must be positive", cfg.r);
  if (cfg.lipschitz_a && !(*cfg.lipschitz_a > 0.0))
    fail("lipschitz_a", "must be positive", *cfg.lipschitz_a);
  if (cfg.lattice_depth < 1) fail("lattice_depth", "must be a positive integer", cfg.lattice_depth);
  if (!(cfg.tol > 0.0)) fail("tol", "must be positive", cfg.tol);
  if (cfg.max_iter < 1) fail("max_iter", "must be a positive integer", cfg.max_iter);
  if (cfg.m_terms < 0) fail("m_terms", "must be nonnegative", cfg.m_terms);
  if (cfg.op != "J" && cfg.op != "D" && cfg.op != "caputo")
    throw ConfigError("operator: expected one of J, D, caputo; got '" + cfg.op + "'");

  switch (*cfg.command) {
    case Command::Eval:
      check_expression("function", cfg.function, {"x"});
      break;
    case Command::Solve:
      check_expression("rhs", cfg.rhs, {"t", "u"});
      break;
    case Command::Ml:
      if (cfg.a != 0.0) fail("a", "the series is expanded about 0; must be 0", cfg.a);
      break;
    case Command::Verify:
      break;
  }
  max_terms_override();
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  if (cfg.command) j["command"] = command_name(*cfg.command);
  const bool verify = cfg.command == Command::Verify;
  if (!verify || cfg.is_set("q")) j["q"] = cfg.q;
  if (!verify || cfg.is_set("p")) j["p"] = cfg.p;
  if (!verify || cfg.is_set("alpha")) j["alpha"] = cfg.alpha;
  j["a"] = cfg.a;
  j["b"] = cfg.b;
  j["zeta"] = cfg.zeta;
  if (!cfg.rhs.empty()) j["rhs"] = cfg.rhs;
  j["r"] = cfg.r;
  if (cfg.lipschitz_a) j["lipschitz_a"] = *cfg.lipschitz_a;
  j["lattice_depth"] = cfg.lattice_depth;
  j["tol"] = cfg.tol;
  j["max_iter"] = cfg.max_iter;
  j["operator"] = cfg.op;
  if (!cfg.function.empty()) j["function"] = cfg.function;
  j["m_terms"] = cfg.m_terms;
  return j;
}

SeriesControl integration_control() {
  SeriesControl c = SeriesControl::integration();
  if (long n = max_terms_override()) c.max_terms = n;
  return c;
}

SeriesControl operator_control() {
  SeriesControl c = SeriesControl::scale_free();
  if (long n = max_terms_override()) c.max_terms = n;
  return c;
}

SeriesControl product_control() {
  SeriesControl c = SeriesControl::products();
  if (long n = max_terms_override()) c.max_terms = n;
  return c;
}

}  // namespace qfrac::cli
