#include "vbaisac/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vbaisac {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw std::invalid_argument("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string out;
  const auto join = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  join(header);
  for (const auto& r : rows) join(r);
  return out;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << to_string();
}

}  // namespace vbaisac
