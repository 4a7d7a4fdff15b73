#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbaisac {

/// Raised for unparseable config input or missing/ill-typed fields; the
/// message names the offending "section.key".
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat sectioned key-value scenario file:
///
///   [section]
///   key = value        # comment
///
/// Values are strings until typed access; lists are comma-separated.
class ScenarioConfig {
 public:
  static ScenarioConfig defaults();
  static ScenarioConfig from_string(const std::string& text);
  static ScenarioConfig from_file(const std::string& path);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string str(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::uint64_t unsigned64(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;

  /// Serializes in section order with sorted keys (print-defaults output).
  std::string to_string() const;

 private:
  std::map<std::string, std::string> values_;  // "section.key" -> value
};

/// Built-in defaults merged under any user-provided file (user values win).
extern const char* const kDefaultConfigText;

}  // namespace vbaisac
