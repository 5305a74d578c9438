#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leocap/constellation.hpp"
#include "leocap/cpe.hpp"
#include "leocap/traffic.hpp"

namespace leocap {

// Experiment configuration. Defaults follow the evaluation settings the
// tool ships with: ISL 10 Gbps, aggregate GSL 100 Gbps, at most 10 ground
// attachments per satellite, lambda in {0,10,20,40} failures per orbital
// period, repair times within [0, 20] minutes, 1-hour timestamps over a
// 24-hour horizon, 5000 loads.
struct ScenarioConfig {
  std::vector<std::string> constellations{"kuiper", "oneweb", "telesat", "starlink"};
  double isl_capacity_gbps = 10.0;
  double gsl_capacity_gbps = 100.0;
  int n_gsl_max = 10;
  std::vector<double> lambdas{0.0, 10.0, 20.0, 40.0};
  std::vector<double> sigmas_min{0.0, 1.0, 2.0, 5.0, 10.0, 20.0};
  // Repair time used by throughput runs when lambda > 0 (capacity sweeps
  // iterate the whole sigmas_min list instead).
  double sigma_thp_min = 2.0;
  double timestamp_step_min = 60.0;
  double horizon_min = 1440.0;
  int n_loads = 5000;
  std::uint64_t seed = 1;
  std::vector<Method> methods{Method::kCpe, Method::kSuperDinic, Method::kSuperDinicSp};
  TrafficModel traffic_model = TrafficModel::kPopulation;
  // Population grid CSV; empty selects the built-in synthetic grid.
  std::string grid_path;
  double demand_gbps = kElasticDemand;
  bool cross_seam = true;
  PhasingConvention phasing = PhasingConvention::kEq1;
  unsigned jobs = 0;
  // Explicit evaluation timestamps for throughput runs; empty defaults to
  // the single mid-horizon timestamp. all_timestamps expands to the full
  // timestamp grid.
  std::vector<double> t_min_list;
  bool all_timestamps = false;
  // Session counts evaluated along a load-throughput curve (clamped to
  // n_loads).
  std::vector<int> load_grid{1, 10, 50, 100, 500, 1000, 2000, 3000, 4000, 5000};

  // Throws ConfigError on out-of-range values.
  void validate() const;

  // Timestamps a throughput run evaluates, resolved from t_min_list /
  // all_timestamps.
  std::vector<double> throughput_timestamps() const;
  // load_grid clamped to n_loads, deduplicated, ascending.
  std::vector<int> effective_load_grid() const;
};

// Applies one "key = value" setting; unknown keys raise ConfigError.
void apply_config_setting(ScenarioConfig& cfg, const std::string& key,
                          const std::string& value);

// Flat key-value file: "key = value" per line, '#' comments.
ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base = {});

// Preset name or inline "walker:NP:MP:F:INCL_DEG:ALT_KM[:name]".
ConstellationSpec resolve_constellation(const std::string& text);

}  // namespace leocap
