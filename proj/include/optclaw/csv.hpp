#pragma once

#include <string>
#include <vector>

namespace optclaw {

// Round-trippable decimal rendering (17 significant digits); the CSV files
// must be byte-identical across runs with the same configuration.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // every row matches the header width
};

std::string render_csv(const CsvTable& table);

// Writes with trailing newline, creating parent directories as needed.
// Throws ConfigError when the path cannot be written.
void write_csv(const std::string& path, const CsvTable& table);

}  // namespace optclaw
