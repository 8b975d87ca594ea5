#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ringwalk::io {

// 17 significant digits, enough to round-trip any double; infinities print as
// inf/-inf
std::string format_double(double v);

// gamma serializer: the nearest-neighbor value prints as "inf"
std::string format_gamma(double gamma);

// accepts "inf"/"infinity" (any case) or a decimal number; anything else throws
double parse_gamma(const std::string& text);

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;  // "# key = value" lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const CsvTable& table);

// write-temp-then-rename; creates parent directories as needed
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace ringwalk::io
