#include "ringwalk/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ringwalk::io {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_gamma(double gamma) { return format_double(gamma); }

double parse_gamma(const std::string& text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "inf" || lower == "infinity") return INFINITY;
  if (text.empty()) throw std::invalid_argument("empty gamma value");
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw std::invalid_argument("cannot parse gamma value '" + text + "'");
  }
  return v;
}

std::string render_csv(const CsvTable& table) {
  std::string out;
  for (const auto& [key, value] : table.metadata) {
    out += "# " + key + " = " + value + "\n";
  }
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ",";
    out += table.header[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.good()) {
      throw std::runtime_error("failed to write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    throw std::runtime_error("failed to move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace ringwalk::io
