#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace qfrac::cli {

/// %.17g; enough digits to round-trip any double.
std::string format_double(double v);

/// Header line plus one `x,value` row per node, in the given order.
std::string csv_table(std::string_view header, std::span<const double> xs,
                      std::span<const double> values);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace qfrac::cli
