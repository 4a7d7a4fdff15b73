#pragma once

#include <string>
#include <vector>

namespace vbaisac {

/// Formats a double with 12 significant digits ("%.12g"); integral values
/// print without a decimal point.
std::string format_number(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
  void write(const std::string& path) const;
};

}  // namespace vbaisac
