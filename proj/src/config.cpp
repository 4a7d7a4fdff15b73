#include "vbaisac/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace vbaisac {

const char* const kDefaultConfigText = R"(# Default scenario: the reference vehicle turn with an 81-antenna transmitter.

[kinematics]
accel = 1.0            # m/s^2
steer_deg = 30.0
heading_deg = 0.0      # 0 points along +y
start_x = 1.0
start_y = 1.0
speed = 20.0           # m/s
wheelbase = 2.0        # m
safety_radius = 1.0    # m
horizon = 0.2          # s
stages = 3
quad_step = 0.001      # s, integrator panel width

[array]
n_tx = 81
spacing_over_wavelength = 0.5
grid_min_deg = -90.0
grid_max_deg = 90.0
grid_step_deg = 0.1

[channel]
n_rx = 16
n_paths = 10
gain_variance = 1.0
angle_min_deg = -90.0
angle_max_deg = 90.0

[solver]
rho = 0.5
n_streams = 3
method = closed-form   # closed-form | sdr
n_rf = 3
sdp_tol = 1e-7
sdp_max_iter = 100
outer_max = 50
outer_tol = 1e-5
cg_tol = 1e-6
cg_max_iter = 400
radar_scaling = matched   # matched | unscaled

[power]
p_bb = 10.0
p_rf = 0.3
p_pa = 0.1
p_ps = 0.01

[sweep]
snr_db = -40,-35,-30,-25,-20,-15,-10,-5,0
rho_list = 0.2,0.5,0.8,1.0
pattern_rho = 0,0.5,1
sigma_e = 0,0.5,1.0
realizations = 400
tv_realizations = 200
master_seed = 1
)";

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

ScenarioConfig ScenarioConfig::from_string(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": key outside any section");
    cfg.values_[section + "." + key] = value;
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::defaults() { return from_string(kDefaultConfigText); }

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  ScenarioConfig cfg = defaults();
  ScenarioConfig user = from_string(ss.str());
  for (const auto& [k, v] : user.values_) cfg.values_[k] = v;
  return cfg;
}

bool ScenarioConfig::has(const std::string& key) const { return values_.count(key) > 0; }

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::string ScenarioConfig::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing config field: " + key);
  return it->second;
}

double ScenarioConfig::number(const std::string& key) const {
  const std::string v = str(key);
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config field " + key + " is not a number: '" + v + "'");
  }
}

int ScenarioConfig::integer(const std::string& key) const {
  const double v = number(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError("config field " + key + " is not an integer");
  return i;
}

std::uint64_t ScenarioConfig::unsigned64(const std::string& key) const {
  const std::string v = str(key);
  try {
    std::size_t pos = 0;
    const unsigned long long out = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config field " + key + " is not an unsigned integer: '" + v + "'");
  }
}

std::vector<double> ScenarioConfig::list(const std::string& key) const {
  const std::string v = str(key);
  std::vector<double> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError("config field " + key + " has an empty list element");
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("config field " + key + " has a non-numeric element: '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("config field " + key + " is an empty list");
  return out;
}

std::string ScenarioConfig::to_string() const {
  std::string out, section;
  for (const auto& [k, v] : values_) {
    const std::size_t dot = k.find('.');
    const std::string sec = k.substr(0, dot);
    if (sec != section) {
      if (!out.empty()) out += '\n';
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += k.substr(dot + 1) + " = " + v + "\n";
  }
  return out;
}

}  // namespace vbaisac
