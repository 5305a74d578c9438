#include "leocap/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leocap/errors.hpp"

namespace leocap {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string token;
  while (std::getline(in, token, sep)) out.push_back(trim(token));
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& token : split(value, ','))
    if (!token.empty()) out.push_back(parse_double(key, token));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (constellations.empty()) throw ConfigError("no constellations configured");
  for (const std::string& c : constellations) resolve_constellation(c);
  if (!(isl_capacity_gbps > 0.0)) throw ConfigError("isl_capacity_gbps must be > 0");
  if (!(gsl_capacity_gbps > 0.0)) throw ConfigError("gsl_capacity_gbps must be > 0");
  if (n_gsl_max < 0) throw ConfigError("n_gsl_max must be >= 0");
  if (lambdas.empty()) throw ConfigError("lambdas must be non-empty");
  for (double l : lambdas)
    if (l < 0.0) throw ConfigError("lambda values must be >= 0");
  if (sigmas_min.empty()) throw ConfigError("sigmas_min must be non-empty");
  for (double s : sigmas_min)
    if (s < 0.0) throw ConfigError("sigma values must be >= 0");
  if (sigma_thp_min < 0.0) throw ConfigError("sigma_thp_min must be >= 0");
  if (!(timestamp_step_min > 0.0)) throw ConfigError("timestamp_step_min must be > 0");
  if (!(horizon_min >= timestamp_step_min))
    throw ConfigError("horizon_min must be >= timestamp_step_min");
  if (n_loads < 1) throw ConfigError("n_loads must be >= 1");
  if (methods.empty()) throw ConfigError("methods must be non-empty");
  if (!(demand_gbps > 0.0)) throw ConfigError("demand_gbps must be > 0 or elastic");
  for (double t : t_min_list)
    if (t < 0.0 || t > horizon_min) throw ConfigError("t_min outside [0, horizon]");
  if (load_grid.empty()) throw ConfigError("load_grid must be non-empty");
  for (int k : load_grid)
    if (k < 1) throw ConfigError("load_grid entries must be >= 1");
}

std::vector<double> ScenarioConfig::throughput_timestamps() const {
  if (all_timestamps) {
    std::vector<double> out;
    for (double t = 0.0; t < horizon_min; t += timestamp_step_min) out.push_back(t);
    return out;
  }
  if (!t_min_list.empty()) return t_min_list;
  // Mid-horizon default: far enough from t = 0 that failure processes have
  // left the everything-up start state.
  double mid = horizon_min / 2.0;
  return {std::floor(mid / timestamp_step_min) * timestamp_step_min};
}

std::vector<int> ScenarioConfig::effective_load_grid() const {
  std::vector<int> grid;
  for (int k : load_grid)
    if (k <= n_loads) grid.push_back(k);
  if (grid.empty() || grid.back() != n_loads) grid.push_back(n_loads);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void apply_config_setting(ScenarioConfig& cfg, const std::string& key,
                          const std::string& value) {
  if (key == "constellations") {
    cfg.constellations = split(value, ',');
    cfg.constellations.erase(
        std::remove(cfg.constellations.begin(), cfg.constellations.end(), std::string()),
        cfg.constellations.end());
  } else if (key == "isl_capacity_gbps") {
    cfg.isl_capacity_gbps = parse_double(key, value);
  } else if (key == "gsl_capacity_gbps") {
    cfg.gsl_capacity_gbps = parse_double(key, value);
  } else if (key == "n_gsl_max") {
    cfg.n_gsl_max = static_cast<int>(parse_long(key, value));
  } else if (key == "lambdas") {
    cfg.lambdas = parse_double_list(key, value);
  } else if (key == "sigmas_min") {
    cfg.sigmas_min = parse_double_list(key, value);
  } else if (key == "sigma_thp_min") {
    cfg.sigma_thp_min = parse_double(key, value);
  } else if (key == "timestamp_step_min") {
    cfg.timestamp_step_min = parse_double(key, value);
  } else if (key == "horizon_min") {
    cfg.horizon_min = parse_double(key, value);
  } else if (key == "n_loads") {
    cfg.n_loads = static_cast<int>(parse_long(key, value));
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
  } else if (key == "methods") {
    cfg.methods.clear();
    for (const std::string& token : split(value, ','))
      if (!token.empty()) cfg.methods.push_back(parse_method(token));
    if (cfg.methods.empty()) throw ConfigError("methods: empty list");
  } else if (key == "traffic_model") {
    cfg.traffic_model = parse_traffic_model(value);
  } else if (key == "grid") {
    cfg.grid_path = (value == "synthetic") ? std::string() : value;
  } else if (key == "demand_gbps") {
    cfg.demand_gbps = (value == "elastic" || value == "ELASTIC")
                          ? kElasticDemand
                          : parse_double(key, value);
  } else if (key == "cross_seam") {
    cfg.cross_seam = parse_bool(key, value);
  } else if (key == "phasing") {
    if (value == "eq1")
      cfg.phasing = PhasingConvention::kEq1;
    else if (value == "classical")
      cfg.phasing = PhasingConvention::kClassicalWalker;
    else
      throw ConfigError("phasing: expected eq1 or classical, got '" + value + "'");
  } else if (key == "jobs") {
    cfg.jobs = static_cast<unsigned>(parse_long(key, value));
  } else if (key == "t_min") {
    cfg.t_min_list = parse_double_list(key, value);
  } else if (key == "all_timestamps") {
    cfg.all_timestamps = parse_bool(key, value);
  } else if (key == "load_grid") {
    cfg.load_grid.clear();
    for (double v : parse_double_list(key, value))
      cfg.load_grid.push_back(static_cast<int>(v));
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string text = trim(line);
    if (text.empty()) continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    apply_config_setting(base, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  return base;
}

ConstellationSpec resolve_constellation(const std::string& text) {
  if (text.rfind("walker:", 0) != 0) return preset_by_name(text);
  std::vector<std::string> parts = split(text.substr(7), ':');
  if (parts.size() != 5 && parts.size() != 6)
    throw ConfigError("inline constellation must be walker:NP:MP:F:INCL_DEG:ALT_KM[:name]");
  ConstellationSpec spec;
  spec.n_planes = static_cast<int>(parse_long("walker NP", parts[0]));
  spec.sats_per_plane = static_cast<int>(parse_long("walker MP", parts[1]));
  spec.phase_factor = static_cast<int>(parse_long("walker F", parts[2]));
  spec.inclination_deg = parse_double("walker inclination", parts[3]);
  spec.altitude_km = parse_double("walker altitude", parts[4]);
  spec.name = parts.size() == 6 ? parts[5]
                                : "walker_" + parts[0] + "x" + parts[1];
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("inline constellation: ") + e.what());
  }
  return spec;
}

}  // namespace leocap
