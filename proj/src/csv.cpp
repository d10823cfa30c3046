#include "optclaw/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "optclaw/errors.hpp"

namespace optclaw {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const CsvTable& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw ContractViolation("csv row width does not match header");
    append_row(row);
  }
  return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory " + p.parent_path().string());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << render_csv(table);
  if (!out) throw ConfigError("failed writing " + path);
}

}  // namespace optclaw
