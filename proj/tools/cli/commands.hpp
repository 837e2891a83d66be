#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace qfrac::cli {

namespace exit_code {
constexpr int ok = 0;
constexpr int verify_failed = 1;
constexpr int config = 2;
constexpr int numerical = 3;
constexpr int max_iter = 4;
constexpr int trust_region = 5;
}  // namespace exit_code

/// Runs the configured command. Results go to cfg.output_path (written
/// atomically) or to `out`; diagnostics go to `err`. Returns the exit status.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err,
            const std::string& fault = {});

}  // namespace qfrac::cli
