#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "qfrac/errors.hpp"

namespace qfrac::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_table(std::string_view header, std::span<const double> xs,
                      std::span<const double> values) {
  std::string out(header);
  out += '\n';
  for (std::size_t i = 0; i < xs.size() && i < values.size(); ++i) {
    out += format_double(xs[i]);
    out += ',';
    out += format_double(values[i]);
    out += '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace qfrac::cli
