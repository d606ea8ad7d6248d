#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace cvrpisa {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column, or -1.
  int column(const std::string& name) const;
};

// Comma-separated, header row mandatory. Double-quoted fields may contain
// commas and doubled quotes. Rows must match the header width.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

std::string csv_field(const std::string& s);
std::string csv_line(const std::vector<std::string>& fields);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// Writes to a temporary sibling file then renames it over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace cvrpisa
