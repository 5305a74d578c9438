#include "leocap/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "leocap/constellation.hpp"
#include "leocap/errors.hpp"
#include "leocap/random.hpp"
#include "leocap/reliability.hpp"
#include "leocap/runners.hpp"
#include "leocap/traffic.hpp"

namespace leocap {

namespace {

// Settings are gathered as (key, value) pairs and replayed through
// apply_config_setting, so flags and config-file lines share one parser.
struct Invocation {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> settings;
  std::string out_path;
  std::string svg_path;
  std::string matrix_out_path;
  std::string graph_path;
  std::string sessions_path;
};

void add_scenario_flags(CLI::App* cmd, Invocation& inv) {
  cmd->add_option("--config", inv.config_path, "flat key = value config file");
  auto bind = [cmd, &inv](const std::string& flag, const std::string& key,
                          const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&inv, key](const std::string& v) { inv.settings.emplace_back(key, v); }, help);
  };
  bind("--constellations", "constellations",
       "comma list of presets or walker:NP:MP:F:INCL:ALT specs");
  bind("--isl-capacity-gbps", "isl_capacity_gbps", "per-ISL capacity (default 10)");
  bind("--gsl-capacity-gbps", "gsl_capacity_gbps",
       "aggregate ground-link capacity per satellite (default 100)");
  bind("--n-gsl-max", "n_gsl_max", "max ground attachments per satellite (default 10)");
  bind("--lambdas", "lambdas", "failures per orbital period, comma list (default 0,10,20,40)");
  bind("--sigmas-min", "sigmas_min", "repair times in minutes (default 0,1,2,5,10,20)");
  bind("--sigma-thp-min", "sigma_thp_min",
       "repair time used by throughput runs at lambda > 0 (default 2)");
  bind("--timestamp-step-min", "timestamp_step_min", "timestamp granularity (default 60)");
  bind("--horizon-min", "horizon_min", "simulation horizon (default 1440)");
  bind("--n-loads", "n_loads", "loads per timestamp (default 5000)");
  bind("--seed", "seed", "base RNG seed (default 1)");
  bind("--methods", "methods", "comma list of cpe,super_dinic,super_dinic_sp");
  bind("--traffic", "traffic_model", "population or random (default population)");
  bind("--grid", "grid", "population grid CSV, or 'synthetic'");
  bind("--demand-gbps", "demand_gbps", "per-load demand, or 'elastic' (default)");
  bind("--phasing", "phasing", "inter-plane phasing: eq1 (default) or classical");
  bind("--jobs", "jobs", "worker threads (default: hardware)");
  bind("--t-min", "t_min", "evaluation timestamps in minutes, comma list");
  bind("--load-grid", "load_grid", "load counts for throughput curves");
  cmd->add_flag_callback(
      "--no-cross-seam",
      [&inv] { inv.settings.emplace_back("cross_seam", "false"); },
      "drop the inter-plane links that close the seam");
  cmd->add_flag_callback(
      "--all-timestamps",
      [&inv] { inv.settings.emplace_back("all_timestamps", "true"); },
      "evaluate every timestamp over the horizon");
}

ScenarioConfig build_config(const Invocation& inv) {
  ScenarioConfig cfg;
  if (!inv.config_path.empty()) cfg = load_config_file(inv.config_path, cfg);
  for (const auto& [key, value] : inv.settings) apply_config_setting(cfg, key, value);
  cfg.validate();
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file: " + path);
  return file;
}

double single_timestamp(const ScenarioConfig& cfg) {
  return cfg.throughput_timestamps().front();
}

int cmd_capacity_sweep(const Invocation& inv, std::ostream& out) {
  ScenarioConfig cfg = build_config(inv);
  std::vector<CapacitySweepRow> rows = run_capacity_sweep(cfg);
  std::ofstream file = open_output(inv.out_path);
  write_capacity_sweep_csv(rows, file);
  out << "capacity-sweep: " << rows.size() << " rows -> " << inv.out_path << "\n";
  return 0;
}

std::vector<RunRecord> throughput_records(const Invocation& inv, const ScenarioConfig& cfg,
                                          bool comparison, int* flagged) {
  if (!inv.graph_path.empty() || !inv.sessions_path.empty()) {
    if (inv.graph_path.empty() || inv.sessions_path.empty())
      throw ConfigError("--graph and --sessions must be given together");
    CapacityGraph g = load_edge_list_file(inv.graph_path);
    std::vector<TrafficSession> sessions = read_sessions_file(inv.sessions_path);
    return run_fixture_throughput(g, sessions, cfg, "fixture:" + inv.sessions_path,
                                  !comparison);
  }
  if (comparison) {
    ComparisonResult result = run_method_comparison(cfg);
    if (flagged != nullptr) *flagged = result.baseline_rows_above_unity;
    return std::move(result.records);
  }
  return run_load_throughput(cfg);
}

int cmd_load_throughput(const Invocation& inv, std::ostream& out) {
  ScenarioConfig cfg = build_config(inv);
  std::vector<RunRecord> records = throughput_records(inv, cfg, false, nullptr);
  {
    std::ofstream file = open_output(inv.out_path);
    write_throughput_csv(records, file);
  }
  if (!inv.svg_path.empty()) open_output(inv.svg_path) << throughput_svg(records);
  out << "load-throughput: " << records.size() << " rows -> " << inv.out_path << "\n";
  return 0;
}

int cmd_compare_methods(const Invocation& inv, std::ostream& out) {
  ScenarioConfig cfg = build_config(inv);
  int flagged = 0;
  std::vector<RunRecord> records = throughput_records(inv, cfg, true, &flagged);
  {
    std::ofstream file = open_output(inv.out_path);
    write_throughput_csv(records, file);
  }
  if (!inv.svg_path.empty()) open_output(inv.svg_path) << throughput_svg(records);
  out << "compare-methods: " << records.size() << " rows -> " << inv.out_path
      << "; baseline rows with utilization > 1: " << flagged << "\n";
  return 0;
}

int cmd_gen_traffic(const Invocation& inv, std::ostream& out) {
  ScenarioConfig cfg = build_config(inv);
  ConstellationSpec spec = resolve_constellation(cfg.constellations.front());
  double t_min = single_timestamp(cfg);
  CapacityGraph topo = build_topology(spec, EpochTime::from_minutes(t_min),
                                      TopologyOptions{cfg.isl_capacity_gbps, cfg.cross_seam,
                                                      cfg.phasing});

  PopulationGrid grid = cfg.grid_path.empty() ? PopulationGrid::synthetic_15deg()
                                              : PopulationGrid::from_csv_file(cfg.grid_path);
  DemandMatrix matrix = generate_demands(
      cfg.traffic_model, &grid, spec, EpochTime::from_minutes(t_min), cfg.n_loads,
      cfg.demand_gbps,
      derive_seed(cfg.seed, {0x74726166ULL, static_cast<std::uint64_t>(std::llround(t_min))}),
      cfg.phasing);
  SessionBuildResult built = build_sessions(matrix, topo);
  if (built.sessions.empty()) throw InfeasibleError("no routable sessions");

  {
    std::ofstream file = open_output(inv.out_path);
    write_sessions(built.sessions, file);
  }
  if (!inv.matrix_out_path.empty()) {
    std::ofstream file = open_output(inv.matrix_out_path);
    write_demand_matrix_csv(matrix, file);
  }
  out << "gen-traffic: " << built.sessions.size() << " sessions ("
      << built.skipped_unreachable << " unreachable) -> " << inv.out_path << "\n";
  return 0;
}

int cmd_dump_topology(const Invocation& inv, std::ostream& out) {
  ScenarioConfig cfg = build_config(inv);
  ConstellationSpec spec = resolve_constellation(cfg.constellations.front());
  double t_min = single_timestamp(cfg);
  CapacityGraph topo = build_topology(spec, EpochTime::from_minutes(t_min),
                                      TopologyOptions{cfg.isl_capacity_gbps, cfg.cross_seam,
                                                      cfg.phasing});
  std::ofstream file = open_output(inv.out_path);
  file << "# " << spec.name << " topology at t=" << t_min << " min: "
       << topo.vertex_count() << " satellites, " << topo.isl_count() << " ISLs\n";
  write_edge_list(topo, file);
  out << "dump-topology: " << topo.isl_count() << " ISLs -> " << inv.out_path << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LEO constellation capacity and throughput quantifier"};
  app.require_subcommand(1);

  Invocation inv;
  int (*handler)(const Invocation&, std::ostream&) = nullptr;

  CLI::App* sweep = app.add_subcommand(
      "capacity-sweep", "time-averaged vs closed-form capacity over (lambda, sigma)");
  add_scenario_flags(sweep, inv);
  sweep->add_option("--out", inv.out_path, "output CSV")->default_val("capacity_sweep.csv");
  sweep->callback([&] { handler = cmd_capacity_sweep; });

  CLI::App* load = app.add_subcommand("load-throughput",
                                      "throughput and utilization over a load-count grid");
  add_scenario_flags(load, inv);
  load->add_option("--out", inv.out_path, "output CSV")->default_val("load_throughput.csv");
  load->add_option("--svg", inv.svg_path, "optional SVG chart");
  load->add_option("--graph", inv.graph_path, "edge-list graph fixture (with --sessions)");
  load->add_option("--sessions", inv.sessions_path, "session file fixture (with --graph)");
  load->callback([&] { handler = cmd_load_throughput; });

  CLI::App* compare = app.add_subcommand(
      "compare-methods", "Starlink comparison of cpe vs super-terminal Dinic baselines");
  add_scenario_flags(compare, inv);
  compare->add_option("--out", inv.out_path, "output CSV")
      ->default_val("method_comparison.csv");
  compare->add_option("--svg", inv.svg_path, "output SVG chart");
  compare->add_option("--graph", inv.graph_path, "edge-list graph fixture (with --sessions)");
  compare->add_option("--sessions", inv.sessions_path, "session file fixture (with --graph)");
  compare->callback([&] { handler = cmd_compare_methods; });

  CLI::App* gen = app.add_subcommand("gen-traffic",
                                     "generate a demand matrix and routed session file");
  add_scenario_flags(gen, inv);
  gen->add_option("--out", inv.out_path, "session file")->default_val("sessions.txt");
  gen->add_option("--matrix-out", inv.matrix_out_path, "optional demand matrix CSV");
  gen->callback([&] { handler = cmd_gen_traffic; });

  CLI::App* dump = app.add_subcommand("dump-topology", "write the ISL topology edge list");
  add_scenario_flags(dump, inv);
  dump->add_option("--out", inv.out_path, "edge-list file")->default_val("topology.txt");
  dump->callback([&] { handler = cmd_dump_topology; });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("leocap");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    return handler(inv, out);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    err << "infeasible scenario: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace leocap
