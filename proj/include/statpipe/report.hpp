// Locale-free numeric formatting for reports and CSV emission.
#pragma once

#include <string>
#include <vector>

namespace statpipe {

enum class OutputFormat { text, csv, structured };

// Accepts "text", "csv", "structured"; throws std::invalid_argument otherwise.
OutputFormat parse_output_format(const std::string &s);

// Fixed-point decimal with '.' separator regardless of locale.
std::string fmt_fixed(double v, int precision = 6);

// Joins cells with commas; cells are emitted verbatim (no quoting: statpipe
// CSV cells never contain commas).
std::string csv_row(const std::vector<std::string> &cells);

}  // namespace statpipe
