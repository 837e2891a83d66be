#pragma once

// Named identity checks run by `qfrac verify`.

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace qfrac::cli {

struct GridPoint {
  double q;
  double p;
  double alpha;
};

struct IdentityResult {
  std::string name;
  std::string error_kind;  ///< "relative", "absolute" or "excess"
  double tolerance = 0.0;
  double max_error = 0.0;
  bool passed = false;
  int cases = 0;
  std::optional<GridPoint> worst;
  std::string failure;  ///< exception text when a check could not be evaluated
};

struct VerifyReport {
  std::vector<GridPoint> grid;
  std::vector<IdentityResult> results;
  bool passed() const;
};

/// Registered identity names in run order.
std::vector<std::string> identity_names();

/// q x p x alpha grid, each axis collapsed to the configured value when that
/// key was set explicitly.
std::vector<GridPoint> verify_grid(const RunConfig& cfg);

/// Runs every identity. A nonempty `fault` perturbs the computed side of the
/// named identity so the harness itself can be tested.
VerifyReport run_verify(const RunConfig& cfg, const std::string& fault = {});

nlohmann::json to_json(const IdentityResult& r);

}  // namespace qfrac::cli
