#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "leocap/cpe.hpp"
#include "leocap/flow.hpp"
#include "leocap/scenario.hpp"

namespace leocap {

// One (constellation, lambda, sigma) sweep result: the Monte-Carlo
// time-averaged capacity over [0, t_min] next to the closed form.
struct CapacitySweepRow {
  std::string constellation;
  double lambda = 0.0;
  double sigma_min = 0.0;
  double t_min = 0.0;
  double capacity_gbps = 0.0;
  double expected_capacity_gbps = 0.0;
};

// One throughput evaluation. wall_ms is bookkeeping only and never reaches
// the CSV, which re-runs must reproduce byte-for-byte.
struct RunRecord {
  std::string scenario;
  double timestamp_min = 0.0;
  Method method = Method::kCpe;
  int n_sessions = 0;
  double throughput_gbps = 0.0;
  double mean_path_utilization = 0.0;
  double network_utilization = 0.0;
  double wall_ms = 0.0;
};

// Capacity sweep over every configured (constellation, lambda, sigma).
std::vector<CapacitySweepRow> run_capacity_sweep(const ScenarioConfig& cfg);

// Load-throughput curves: per (constellation, lambda, timestamp), sessions
// are generated once and every configured method runs on nested
// load-count prefixes.
std::vector<RunRecord> run_load_throughput(const ScenarioConfig& cfg);

struct ComparisonResult {
  std::vector<RunRecord> records;
  // Rows where a baseline's mean path utilization exceeded 1.
  int baseline_rows_above_unity = 0;
};

// Starlink method comparison; requires all three methods. Aborts with
// std::logic_error if constrained-path-expansion utilization ever exceeds
// 1, which would indicate a broken invariant.
ComparisonResult run_method_comparison(const ScenarioConfig& cfg);

// Methods over an externally supplied graph + session fixture. With
// sweep_loads the configured load grid is applied as prefixes; otherwise
// only the full session list runs.
std::vector<RunRecord> run_fixture_throughput(const CapacityGraph& g,
                                              const std::vector<TrafficSession>& sessions,
                                              const ScenarioConfig& cfg,
                                              const std::string& scenario_id,
                                              bool sweep_loads);

void write_capacity_sweep_csv(const std::vector<CapacitySweepRow>& rows, std::ostream& out);
void write_throughput_csv(const std::vector<RunRecord>& records, std::ostream& out);

// Two-panel SVG (throughput in Tbps, mean path utilization in %) over the
// load count; derived from the records alone.
std::string throughput_svg(const std::vector<RunRecord>& records);

}  // namespace leocap
