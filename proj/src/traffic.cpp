#include "leocap/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "leocap/errors.hpp"
#include "leocap/parallel.hpp"
#include "leocap/random.hpp"

namespace leocap {

namespace {

std::array<double, 3> cell_unit_vector(const PopulationCell& cell) {
  double lat = cell.lat_deg * std::numbers::pi / 180.0;
  double lon = cell.lon_deg * std::numbers::pi / 180.0;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

// Great-circle distance from the cell to the subsatellite point plus the
// shell altitude.
double cell_to_satellite_distance(const std::array<double, 3>& cell_unit,
                                  const std::array<double, 3>& sat_ecef_km,
                                  double altitude_km) {
  double norm = std::sqrt(sat_ecef_km[0] * sat_ecef_km[0] + sat_ecef_km[1] * sat_ecef_km[1] +
                          sat_ecef_km[2] * sat_ecef_km[2]);
  double dot = (cell_unit[0] * sat_ecef_km[0] + cell_unit[1] * sat_ecef_km[1] +
                cell_unit[2] * sat_ecef_km[2]) /
               norm;
  dot = std::clamp(dot, -1.0, 1.0);
  return kEarthRadiusKm * std::acos(dot) + altitude_km;
}

std::vector<std::array<double, 3>> all_positions(const ConstellationSpec& spec, EpochTime t,
                                                 PhasingConvention convention) {
  std::vector<std::array<double, 3>> pos(static_cast<std::size_t>(spec.satellite_count()));
  for (int id = 0; id < spec.satellite_count(); ++id)
    pos[static_cast<std::size_t>(id)] =
        propagate(spec, SatelliteNode::from_id(spec, id), t, convention).position_ecef_km;
  return pos;
}

int nearest_satellite(const PopulationCell& cell,
                      const std::vector<std::array<double, 3>>& positions,
                      double altitude_km) {
  std::array<double, 3> unit = cell_unit_vector(cell);
  int best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t id = 0; id < positions.size(); ++id) {
    double d = cell_to_satellite_distance(unit, positions[id], altitude_km);
    if (d < best_distance) {
      best_distance = d;
      best = static_cast<int>(id);
    }
  }
  return best;
}

std::string format_number(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

PopulationGrid::PopulationGrid(std::vector<PopulationCell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw InfeasibleError("population grid has no cells");
  double total = 0.0;
  for (const PopulationCell& c : cells_) {
    if (c.weight < 0.0) throw std::invalid_argument("population weight must be >= 0");
    total += c.weight;
  }
  if (total <= 0.0) throw InfeasibleError("population grid weights are all zero");
  for (PopulationCell& c : cells_) c.weight /= total;
}

PopulationGrid PopulationGrid::from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("lat_deg,lon_deg,weight", 0) != 0)
    throw std::invalid_argument("population grid CSV must start with lat_deg,lon_deg,weight");
  std::vector<PopulationCell> cells;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    PopulationCell cell;
    char c1, c2;
    if (!(ls >> cell.lat_deg >> c1 >> cell.lon_deg >> c2 >> cell.weight) || c1 != ',' ||
        c2 != ',')
      throw std::invalid_argument("population grid CSV: malformed line " +
                                  std::to_string(line_no));
    cells.push_back(cell);
  }
  return PopulationGrid(std::move(cells));
}

PopulationGrid PopulationGrid::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open population grid: " + path);
  return from_csv(in);
}

void PopulationGrid::to_csv(std::ostream& out) const {
  out << "lat_deg,lon_deg,weight\n";
  for (const PopulationCell& c : cells_)
    out << format_number(c.lat_deg) << ',' << format_number(c.lon_deg) << ','
        << format_number(c.weight) << '\n';
}

PopulationGrid PopulationGrid::synthetic_15deg() {
  std::vector<PopulationCell> cells;
  cells.reserve(288);
  for (int i = 0; i < 12; ++i) {
    double lat = -82.5 + 15.0 * i;
    for (int j = 0; j < 24; ++j) {
      double lon = -172.5 + 15.0 * j;
      // Mid-northern-latitude band with longitudinal clumps, loosely
      // land-shaped; strictly positive so every cell stays reachable.
      double band = std::exp(-std::pow((lat - 27.5) / 32.0, 2.0));
      double clumps =
          1.0 + 0.8 * std::sin(3.0 * lon * std::numbers::pi / 180.0 + 0.7) *
                    std::cos(lat * std::numbers::pi / 180.0);
      cells.push_back(PopulationCell{lat, lon, 0.02 + band * clumps});
    }
  }
  return PopulationGrid(std::move(cells));
}

std::string traffic_model_name(TrafficModel m) {
  return m == TrafficModel::kPopulation ? "population" : "random";
}

TrafficModel parse_traffic_model(const std::string& name) {
  if (name == "population") return TrafficModel::kPopulation;
  if (name == "random") return TrafficModel::kRandom;
  throw ConfigError("unknown traffic model: " + name);
}

int map_cell_to_satellite(const PopulationCell& cell, const ConstellationSpec& spec,
                          EpochTime t, PhasingConvention convention) {
  spec.validate();
  return nearest_satellite(cell, all_positions(spec, t, convention), spec.altitude_km);
}

DemandMatrix generate_demands(TrafficModel model, const PopulationGrid* grid,
                              const ConstellationSpec& spec, EpochTime t, int n_loads,
                              double demand_gbps, std::uint64_t seed,
                              PhasingConvention convention) {
  spec.validate();
  if (n_loads < 1) throw std::invalid_argument("n_loads must be >= 1");
  if (!(demand_gbps > 0.0))
    throw std::invalid_argument("per-load demand must be > 0 or elastic");
  if (model == TrafficModel::kPopulation && grid == nullptr)
    throw std::invalid_argument("population model requires a grid");

  const int n_sats = spec.satellite_count();
  if (n_sats < 2) throw InfeasibleError("need at least two satellites for traffic");

  // Cell -> satellite map and sampling CDF, fixed for this timestamp.
  std::vector<int> cell_sat;
  std::vector<double> cdf;
  if (model == TrafficModel::kPopulation) {
    auto positions = all_positions(spec, t, convention);
    cell_sat.reserve(grid->cells().size());
    cdf.reserve(grid->cells().size());
    double acc = 0.0;
    for (const PopulationCell& cell : grid->cells()) {
      cell_sat.push_back(nearest_satellite(cell, positions, spec.altitude_km));
      acc += cell.weight;
      cdf.push_back(acc);
    }
    cdf.back() = 1.0;
  }

  Rng rng(splitmix64(seed));
  auto draw_sat = [&]() -> int {
    if (model == TrafficModel::kRandom)
      return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_sats)));
    double u = rng.uniform01();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    return cell_sat[idx];
  };

  std::map<std::pair<std::int32_t, std::int32_t>, double> aggregated;
  long attempts = 0;
  const long max_attempts = 1000L * n_loads + 1000L;
  for (int i = 0; i < n_loads; ++i) {
    int src, dst;
    do {
      if (++attempts > max_attempts)
        throw InfeasibleError("traffic generation keeps drawing self-pairs; "
                              "grid maps to a single satellite");
      src = draw_sat();
      dst = draw_sat();
    } while (src == dst);
    double& slot = aggregated[{src, dst}];
    slot = std::isinf(demand_gbps) ? kElasticDemand : slot + demand_gbps;
  }

  DemandMatrix matrix;
  matrix.model = model;
  matrix.seed = seed;
  matrix.entries.reserve(aggregated.size());
  for (const auto& [pair, demand] : aggregated)
    matrix.entries.push_back(DemandMatrix::Entry{pair.first, pair.second, demand});
  return matrix;
}

void write_demand_matrix_csv(const DemandMatrix& matrix, std::ostream& out) {
  out << "src,dst,demand_gbps\n";
  for (const DemandMatrix::Entry& e : matrix.entries)
    out << e.src << ',' << e.dst << ',' << format_number(e.demand_gbps) << '\n';
}

std::optional<std::vector<std::int32_t>> shortest_distance_path(const CapacityGraph& g,
                                                                int src, int dst) {
  if (src < 0 || src >= g.vertex_count() || dst < 0 || dst >= g.vertex_count())
    throw std::invalid_argument("shortest_distance_path: vertex id out of range");
  if (src == dst) throw std::invalid_argument("shortest_distance_path: src equals dst");

  // Distance-to-destination labels, then a greedy lowest-id walk along the
  // shortest-path DAG gives the lexicographically smallest shortest path.
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(g.vertex_count()), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<std::size_t>(dst)] = 0.0;
  queue.emplace(0.0, dst);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (std::int32_t arc_id : g.out_arcs(u)) {
      const Arc& arc = g.arcs()[static_cast<std::size_t>(arc_id)];
      if (!(arc.capacity_gbps > 0.0)) continue;  // down or zero-capacity link
      double nd = d + arc.length_km;
      if (nd < dist[static_cast<std::size_t>(arc.dst)]) {
        dist[static_cast<std::size_t>(arc.dst)] = nd;
        queue.emplace(nd, arc.dst);
      }
    }
  }
  if (std::isinf(dist[static_cast<std::size_t>(src)])) return std::nullopt;

  std::vector<std::int32_t> path{static_cast<std::int32_t>(src)};
  int u = src;
  while (u != dst) {
    const double here = dist[static_cast<std::size_t>(u)];
    const double tol = 1e-9 * (1.0 + here);
    int next = -1;
    for (std::int32_t arc_id : g.out_arcs(u)) {
      const Arc& arc = g.arcs()[static_cast<std::size_t>(arc_id)];
      if (!(arc.capacity_gbps > 0.0)) continue;
      double via = arc.length_km + dist[static_cast<std::size_t>(arc.dst)];
      if (std::abs(via - here) <= tol && dist[static_cast<std::size_t>(arc.dst)] < here &&
          (next == -1 || arc.dst < next))
        next = arc.dst;
    }
    if (next == -1) return std::nullopt;  // tolerance dead end; treat as unreachable
    path.push_back(static_cast<std::int32_t>(next));
    u = next;
    if (path.size() > static_cast<std::size_t>(g.vertex_count())) return std::nullopt;
  }
  return path;
}

SessionBuildResult build_sessions(const DemandMatrix& matrix, const CapacityGraph& g,
                                  unsigned jobs) {
  std::vector<std::optional<std::vector<std::int32_t>>> paths(matrix.entries.size());
  parallel_for(matrix.entries.size(), jobs, [&](std::size_t i) {
    paths[i] = shortest_distance_path(g, matrix.entries[i].src, matrix.entries[i].dst);
  });
  SessionBuildResult result;
  result.sessions.reserve(matrix.entries.size());
  for (std::size_t i = 0; i < matrix.entries.size(); ++i) {
    if (!paths[i]) {
      ++result.skipped_unreachable;
      continue;
    }
    result.sessions.push_back(
        TrafficSession{std::move(*paths[i]), matrix.entries[i].demand_gbps});
  }
  return result;
}

}  // namespace leocap
