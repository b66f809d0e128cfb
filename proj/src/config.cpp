#include "nsp2d/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace nsp2d {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw ValidationError(key + ": expected a number, got '" + v + "'");
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw ValidationError(key + ": expected an integer, got '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < -2147483647LL || x > 2147483647LL)
    throw ValidationError(key + ": integer out of range");
  return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long out = 0;
  if (v.empty() || v[0] == '-')
    throw ValidationError(key + ": expected an unsigned integer, got '" + v + "'");
  try {
    out = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size())
    throw ValidationError(key + ": expected an unsigned integer, got '" + v + "'");
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"grid.n", [](ScenarioConfig& c, auto& k, auto& v) { c.grid.n = to_int(k, v); }},
      {"grid.length", [](ScenarioConfig& c, auto& k, auto& v) { c.grid.length = to_double(k, v); }},
      {"grid.dealias", [](ScenarioConfig& c, auto& k, auto& v) { c.grid.dealias = to_double(k, v); }},
      {"params.epsilon", [](ScenarioConfig& c, auto& k, auto& v) { c.params.epsilon = to_double(k, v); }},
      {"params.kappa0", [](ScenarioConfig& c, auto& k, auto& v) { c.params.kappa0 = to_double(k, v); }},
      {"params.dt", [](ScenarioConfig& c, auto& k, auto& v) { c.params.dt = to_double(k, v); }},
      {"params.t_end", [](ScenarioConfig& c, auto& k, auto& v) { c.params.t_end = to_double(k, v); }},
      {"params.theta", [](ScenarioConfig& c, auto& k, auto& v) { c.params.theta = to_double(k, v); }},
      {"params.delta", [](ScenarioConfig& c, auto& k, auto& v) { c.params.delta = to_double(k, v); }},
      {"params.sigma", [](ScenarioConfig& c, auto& k, auto& v) { c.params.sigma = to_int(k, v); }},
      {"params.system",
       [](ScenarioConfig& c, auto& k, auto& v) {
         if (v == "irrotational") c.system = RunSystem::irrotational;
         else if (v == "full") c.system = RunSystem::full;
         else if (v == "split") c.system = RunSystem::split;
         else throw ValidationError(k + ": expected irrotational, full or split, got '" + v + "'");
       }},
      {"init.profile",
       [](ScenarioConfig& c, auto& k, auto& v) {
         if (v == "gaussian_irrotational") c.init.profile = InitProfile::gaussian_irrotational;
         else if (v == "gaussian_vortex") c.init.profile = InitProfile::gaussian_vortex;
         else if (v == "combined") c.init.profile = InitProfile::combined;
         else
           throw ValidationError(k + ": expected gaussian_irrotational, gaussian_vortex or combined, got '" + v + "'");
       }},
      {"init.target",
       [](ScenarioConfig& c, auto& k, auto& v) {
         if (v == "y_norm") c.init.target = CalibrationTarget::y_norm;
         else if (v == "h3_norm") c.init.target = CalibrationTarget::h3_norm;
         else throw ValidationError(k + ": expected y_norm or h3_norm, got '" + v + "'");
       }},
      {"init.seed", [](ScenarioConfig& c, auto& k, auto& v) { c.init.seed = to_u64(k, v); }},
      {"init.y_sigma", [](ScenarioConfig& c, auto& k, auto& v) { c.init.y_sigma = to_int(k, v); }},
      {"init.calibration_c", [](ScenarioConfig& c, auto& k, auto& v) { c.init.calibration_c = to_double(k, v); }},
      {"output.dir", [](ScenarioConfig& c, auto&, auto& v) { c.output.dir = v; }},
      {"output.sample_every", [](ScenarioConfig& c, auto& k, auto& v) { c.output.sample_every = to_int(k, v); }},
      {"output.snapshot_every", [](ScenarioConfig& c, auto& k, auto& v) { c.output.snapshot_every = to_int(k, v); }},
      {"sweep.epsilon_list",
       [](ScenarioConfig& c, auto& k, auto& v) {
         c.sweep.epsilon_list.clear();
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ',')) c.sweep.epsilon_list.push_back(to_double(k, trim(item)));
       }},
      {"sweep.t_cap_factor", [](ScenarioConfig& c, auto& k, auto& v) { c.sweep.t_cap_factor = to_double(k, v); }},
      {"sweep.energy_every", [](ScenarioConfig& c, auto& k, auto& v) { c.sweep.energy_every = to_int(k, v); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : setters()) out.push_back(k);
    return out;
  }();
  return keys;
}

void ScenarioConfig::validate() const {
  if (grid.n < 8 || grid.n % 2 != 0)
    throw ValidationError("grid.n must be an even integer >= 8");
  if (!(grid.length > 0.0)) throw ValidationError("grid.length must be positive");
  if (!(grid.dealias > 0.0 && grid.dealias <= 1.0))
    throw ValidationError("grid.dealias must lie in (0,1]");
  params.validate();
  if (init.y_sigma < 0) throw ValidationError("init.y_sigma must be >= 0");
  if (!(init.calibration_c > 0.0))
    throw ValidationError("init.calibration_c must be positive");
  if (output.sample_every < 1) throw ValidationError("output.sample_every must be >= 1");
  if (output.snapshot_every < 0) throw ValidationError("output.snapshot_every must be >= 0");
  if (sweep.epsilon_list.empty())
    throw ValidationError("sweep.epsilon_list must not be empty");
  for (double e : sweep.epsilon_list)
    if (!(e > 0.0 && e <= 1.0))
      throw ValidationError("sweep.epsilon_list entries must lie in (0,1]");
  if (!(sweep.t_cap_factor > 0.0))
    throw ValidationError("sweep.t_cap_factor must be positive");
  if (sweep.energy_every < 1) throw ValidationError("sweep.energy_every must be >= 1");
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::map<std::string, Setter> table(setters().begin(), setters().end());
  std::set<std::string> seen;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end())
      throw ValidationError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw ValidationError("line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    try {
      it->second(cfg, key, value);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config file '" + path + "': file not found");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::string to_string(InitProfile p) {
  switch (p) {
    case InitProfile::gaussian_irrotational: return "gaussian_irrotational";
    case InitProfile::gaussian_vortex: return "gaussian_vortex";
    case InitProfile::combined: return "combined";
  }
  return "?";
}

std::string to_string(RunSystem s) {
  switch (s) {
    case RunSystem::irrotational: return "irrotational";
    case RunSystem::full: return "full";
    case RunSystem::split: return "split";
  }
  return "?";
}

}  // namespace nsp2d
