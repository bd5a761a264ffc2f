#include "statpipe/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace statpipe {

OutputFormat parse_output_format(const std::string &s) {
  if (s == "text") return OutputFormat::text;
  if (s == "csv") return OutputFormat::csv;
  if (s == "structured") return OutputFormat::structured;
  throw std::invalid_argument("unknown output format: " + s +
                              " (expected text, csv, or structured)");
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  // snprintf with an explicit precision; the C locale's '.' is assumed and
  // the CLI never touches setlocale.
  const int written = std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  if (written < 0 || written >= static_cast<int>(sizeof(buf))) {
    char wide[512];
    std::snprintf(wide, sizeof(wide), "%.*f", precision, v);
    return wide;
  }
  return buf;
}

std::string csv_row(const std::vector<std::string> &cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  return row;
}

}  // namespace statpipe
