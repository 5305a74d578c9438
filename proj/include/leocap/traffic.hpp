#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "leocap/constellation.hpp"
#include "leocap/cpe.hpp"
#include "leocap/flow.hpp"

namespace leocap {

struct PopulationCell {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double weight = 0.0;
};

// Ground demand distribution over lat/lon cells. Weights are normalized to
// sum to 1 on construction; an all-zero grid is rejected as infeasible.
class PopulationGrid {
 public:
  explicit PopulationGrid(std::vector<PopulationCell> cells);

  // CSV with header "lat_deg,lon_deg,weight".
  static PopulationGrid from_csv(std::istream& in);
  static PopulationGrid from_csv_file(const std::string& path);
  void to_csv(std::ostream& out) const;

  // Deterministic synthetic 15x15-degree grid (288 cells) with a
  // population-like mid-latitude concentration. Stands in for real
  // datasets in tests and demos.
  static PopulationGrid synthetic_15deg();

  const std::vector<PopulationCell>& cells() const { return cells_; }

 private:
  std::vector<PopulationCell> cells_;
};

enum class TrafficModel { kPopulation, kRandom };

std::string traffic_model_name(TrafficModel m);
TrafficModel parse_traffic_model(const std::string& name);

// Sparse demand matrix plus the session endpoints it induces. Entries are
// unique (src, dst) pairs with aggregated demand, sorted by (src, dst); a
// load-count prefix of the entries is itself a valid smaller scenario.
struct DemandMatrix {
  TrafficModel model = TrafficModel::kRandom;
  std::uint64_t seed = 0;
  struct Entry {
    std::int32_t src = 0;
    std::int32_t dst = 0;
    double demand_gbps = kElasticDemand;
  };
  std::vector<Entry> entries;
};

// Satellite closest to the cell by great-circle-plus-altitude distance;
// ties break toward the lowest sat id.
int map_cell_to_satellite(const PopulationCell& cell, const ConstellationSpec& spec,
                          EpochTime t,
                          PhasingConvention convention = PhasingConvention::kEq1);

// Draws n_loads (source, sink) pairs — cell pairs weighted by
// weight(src)*weight(dst) under kPopulation (grid required), uniform
// satellite pairs under kRandom — maps them to satellites, redraws
// self-pairs, and aggregates duplicates by summing demand. demand_gbps is
// the per-load demand (kElasticDemand for saturation runs).
DemandMatrix generate_demands(TrafficModel model, const PopulationGrid* grid,
                              const ConstellationSpec& spec, EpochTime t, int n_loads,
                              double demand_gbps, std::uint64_t seed,
                              PhasingConvention convention = PhasingConvention::kEq1);

void write_demand_matrix_csv(const DemandMatrix& matrix, std::ostream& out);

// Minimum total-length path over ISLs with positive capacity (Dijkstra);
// among equal-length shortest paths the lexicographically smallest node-id
// sequence wins. nullopt when dst is unreachable.
std::optional<std::vector<std::int32_t>> shortest_distance_path(const CapacityGraph& g,
                                                                int src, int dst);

struct SessionBuildResult {
  std::vector<TrafficSession> sessions;
  int skipped_unreachable = 0;
};

// Routes every matrix entry with shortest_distance_path; unreachable pairs
// are skipped and counted.
SessionBuildResult build_sessions(const DemandMatrix& matrix, const CapacityGraph& g,
                                  unsigned jobs = 1);

}  // namespace leocap
