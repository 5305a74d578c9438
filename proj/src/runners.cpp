#include "leocap/runners.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include "leocap/constellation.hpp"
#include "leocap/errors.hpp"
#include "leocap/parallel.hpp"
#include "leocap/random.hpp"
#include "leocap/reliability.hpp"
#include "leocap/svg.hpp"

namespace leocap {

namespace {

constexpr std::uint64_t kTrafficStream = 0x74726166ULL;

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

TopologyOptions topology_options(const ScenarioConfig& cfg) {
  return TopologyOptions{cfg.isl_capacity_gbps, cfg.cross_seam, cfg.phasing};
}

PopulationGrid scenario_grid(const ScenarioConfig& cfg) {
  return cfg.grid_path.empty() ? PopulationGrid::synthetic_15deg()
                               : PopulationGrid::from_csv_file(cfg.grid_path);
}

// Runs every configured method on nested prefixes of the session list and
// appends one record per (load grid point, method).
void evaluate_methods(const ScenarioConfig& cfg, const CapacityGraph& g,
                      const std::vector<TrafficSession>& sessions,
                      const std::string& scenario, double t_min,
                      const std::vector<int>& load_grid, std::vector<RunRecord>& out) {
  if (sessions.empty())
    throw InfeasibleError(scenario + ": no routable sessions at t=" + fmt_g(t_min));
  GslBudget budget{cfg.gsl_capacity_gbps, cfg.n_gsl_max};
  for (int k : load_grid) {
    std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(k), sessions.size());
    std::span<const TrafficSession> prefix(sessions.data(), n);
    for (Method method : cfg.methods) {
      auto start = std::chrono::steady_clock::now();
      ThroughputReport report = method == Method::kCpe
                                    ? cpe_throughput(prefix, g, budget)
                                    : baseline_throughput(prefix, g, method);
      out.push_back(RunRecord{scenario, t_min, method, static_cast<int>(n),
                              report.aggregate_throughput_gbps,
                              report.mean_path_utilization, report.network_utilization,
                              elapsed_ms(start)});
    }
  }
}

}  // namespace

std::vector<CapacitySweepRow> run_capacity_sweep(const ScenarioConfig& cfg) {
  cfg.validate();

  struct Combo {
    std::size_t c_idx;
    double lambda;
    double sigma;
  };
  std::vector<ConstellationSpec> specs;
  std::vector<CapacityGraph> topologies;
  for (const std::string& name : cfg.constellations) {
    specs.push_back(resolve_constellation(name));
    topologies.push_back(build_topology(specs.back(), EpochTime{0.0}, topology_options(cfg)));
  }

  std::vector<Combo> combos;
  for (std::size_t c = 0; c < specs.size(); ++c)
    for (double lambda : cfg.lambdas)
      for (double sigma : cfg.sigmas_min) combos.push_back(Combo{c, lambda, sigma});

  std::vector<CapacitySweepRow> rows(combos.size());
  parallel_for(combos.size(), cfg.jobs, [&](std::size_t i) {
    const Combo& combo = combos[i];
    const CapacityGraph& topo = topologies[combo.c_idx];
    double period = orbital_period_min(specs[combo.c_idx]);
    auto timelines = sample_isl_timelines(
        topo, ReliabilityParams{combo.lambda, combo.sigma, period}, cfg.seed,
        cfg.horizon_min);
    rows[i] = CapacitySweepRow{
        specs[combo.c_idx].name,
        combo.lambda,
        combo.sigma,
        cfg.horizon_min,
        time_averaged_capacity(topo, timelines, 0.0, cfg.horizon_min),
        expected_capacity(topo.isl_count(), cfg.isl_capacity_gbps, period, combo.lambda,
                          combo.sigma)};
  });
  return rows;
}

std::vector<RunRecord> run_load_throughput(const ScenarioConfig& cfg) {
  cfg.validate();

  struct Job {
    std::size_t c_idx;
    double lambda;
    double t_min;
  };
  std::vector<ConstellationSpec> specs;
  for (const std::string& name : cfg.constellations)
    specs.push_back(resolve_constellation(name));

  const PopulationGrid grid = scenario_grid(cfg);
  const std::vector<double> timestamps = cfg.throughput_timestamps();
  const std::vector<int> load_grid = cfg.effective_load_grid();

  std::vector<Job> jobs;
  for (std::size_t c = 0; c < specs.size(); ++c)
    for (double lambda : cfg.lambdas)
      for (double t : timestamps) jobs.push_back(Job{c, lambda, t});

  std::vector<std::vector<RunRecord>> per_job(jobs.size());
  parallel_for(jobs.size(), cfg.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    const ConstellationSpec& spec = specs[job.c_idx];
    CapacityGraph topo =
        build_topology(spec, EpochTime::from_minutes(job.t_min), topology_options(cfg));
    double sigma = job.lambda > 0.0 ? cfg.sigma_thp_min : 0.0;
    CapacityGraph working = topo;
    if (job.lambda > 0.0) {
      auto timelines = sample_isl_timelines(
          topo, ReliabilityParams{job.lambda, sigma, orbital_period_min(spec)}, cfg.seed,
          cfg.horizon_min);
      working = masked_topology(topo, timelines, job.t_min);
    }

    DemandMatrix matrix = generate_demands(
        cfg.traffic_model, &grid, spec, EpochTime::from_minutes(job.t_min), cfg.n_loads,
        cfg.demand_gbps,
        derive_seed(cfg.seed,
                    {kTrafficStream, static_cast<std::uint64_t>(std::llround(job.t_min))}),
        cfg.phasing);
    SessionBuildResult built = build_sessions(matrix, working);

    std::string scenario = spec.name + "/l" + fmt_g(job.lambda) + "/s" + fmt_g(sigma);
    evaluate_methods(cfg, working, built.sessions, scenario, job.t_min, load_grid,
                     per_job[i]);
  });

  std::vector<RunRecord> records;
  for (auto& chunk : per_job)
    for (RunRecord& r : chunk) records.push_back(std::move(r));
  return records;
}

ComparisonResult run_method_comparison(const ScenarioConfig& cfg) {
  bool has_cpe = false, has_dinic = false, has_sp = false;
  for (Method m : cfg.methods) {
    has_cpe |= m == Method::kCpe;
    has_dinic |= m == Method::kSuperDinic;
    has_sp |= m == Method::kSuperDinicSp;
  }
  if (!has_cpe || !has_dinic || !has_sp)
    throw ConfigError("compare-methods requires methods cpe, super_dinic, super_dinic_sp");

  ScenarioConfig starlink_cfg = cfg;
  starlink_cfg.constellations = {"starlink"};
  ComparisonResult result;
  result.records = run_load_throughput(starlink_cfg);
  for (const RunRecord& r : result.records) {
    if (r.method == Method::kCpe) {
      if (r.mean_path_utilization > 1.0 + 1e-9)
        throw std::logic_error("constrained-path-expansion utilization above 1 at " +
                               r.scenario);
    } else if (r.mean_path_utilization > 1.0) {
      ++result.baseline_rows_above_unity;
    }
  }
  return result;
}

std::vector<RunRecord> run_fixture_throughput(const CapacityGraph& g,
                                              const std::vector<TrafficSession>& sessions,
                                              const ScenarioConfig& cfg,
                                              const std::string& scenario_id,
                                              bool sweep_loads) {
  cfg.validate();
  std::vector<int> load_grid;
  if (sweep_loads) {
    for (int k : cfg.effective_load_grid())
      if (k <= static_cast<int>(sessions.size())) load_grid.push_back(k);
  }
  if (load_grid.empty() || load_grid.back() != static_cast<int>(sessions.size()))
    load_grid.push_back(static_cast<int>(sessions.size()));
  std::vector<RunRecord> records;
  evaluate_methods(cfg, g, sessions, scenario_id, 0.0, load_grid, records);
  return records;
}

void write_capacity_sweep_csv(const std::vector<CapacitySweepRow>& rows, std::ostream& out) {
  out << "constellation,lambda,sigma_min,t_min,capacity_gbps,expected_capacity_gbps\n";
  for (const CapacitySweepRow& r : rows)
    out << r.constellation << ',' << fmt_g(r.lambda) << ',' << fmt_g(r.sigma_min) << ','
        << fmt_g(r.t_min) << ',' << fmt_f6(r.capacity_gbps) << ','
        << fmt_f6(r.expected_capacity_gbps) << '\n';
}

void write_throughput_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "scenario,timestamp,method,n_sessions,throughput_gbps,mean_path_utilization,"
         "network_utilization\n";
  for (const RunRecord& r : records)
    out << r.scenario << ',' << fmt_g(r.timestamp_min) << ',' << method_name(r.method)
        << ',' << r.n_sessions << ',' << fmt_f6(r.throughput_gbps) << ','
        << fmt_f6(r.mean_path_utilization) << ',' << fmt_f6(r.network_utilization) << '\n';
}

std::string throughput_svg(const std::vector<RunRecord>& records) {
  auto color_of = [](Method m) {
    switch (m) {
      case Method::kCpe: return "#1f5fd0";
      case Method::kSuperDinic: return "#d03030";
      case Method::kSuperDinicSp: return "#2a9d3a";
    }
    return "#000000";
  };

  // One series per (scenario, method), points ordered by load count.
  std::map<std::pair<std::string, Method>, ChartSeries> thp, util;
  for (const RunRecord& r : records) {
    auto key = std::make_pair(r.scenario, r.method);
    auto& s1 = thp[key];
    auto& s2 = util[key];
    if (s1.points.empty()) {
      s1.label = r.scenario + " " + method_name(r.method);
      s1.color = color_of(r.method);
      s2.label = s1.label;
      s2.color = s1.color;
    }
    s1.points.emplace_back(r.n_sessions, r.throughput_gbps / 1000.0);
    s2.points.emplace_back(r.n_sessions, r.mean_path_utilization * 100.0);
  }

  LineChart left{"Throughput vs load",
                 ChartAxis{"load count", true},
                 ChartAxis{"Tbps", false},
                 {}};
  LineChart right{"Path utilization vs load",
                  ChartAxis{"load count", true},
                  ChartAxis{"utilization %", true},
                  {}};
  for (auto& [key, series] : thp) left.series.push_back(std::move(series));
  for (auto& [key, series] : util) right.series.push_back(std::move(series));
  return render_svg({left, right});
}

}  // namespace leocap
