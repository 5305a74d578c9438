#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "leocap/flow.hpp"

namespace leocap {

// Demand marker for an uncapped (saturation) session.
constexpr double kElasticDemand = std::numeric_limits<double>::infinity();

// One routed traffic load: an ordered simple path of ISL-adjacent
// satellites plus a demand (kElasticDemand for unbounded).
struct TrafficSession {
  std::vector<std::int32_t> path;
  double demand_gbps = kElasticDemand;

  std::int32_t head() const { return path.front(); }
  std::int32_t tail() const { return path.back(); }
};

// Ground-segment budget: every satellite shares one aggregate GSL capacity
// evenly across its attached head/tail expansion nodes, and accepts at most
// max_attachments of them.
struct GslBudget {
  double gsl_capacity_gbps = 100.0;
  int max_attachments = 10;
};

// The expanded traffic graph built by constrained path expansion:
// satellites carry their allocated ISL flow, every served session owns a
// private head and/or tail expansion node, and expansion nodes hang off the
// super terminals.
struct TrafficGraph {
  CapacityGraph expanded;
  int super_source = -1;
  int super_sink = -1;
  // Per session; -1 when the expansion was blocked.
  std::vector<std::int32_t> head_vertex;
  std::vector<std::int32_t> tail_vertex;
  // N_gsl per satellite.
  std::vector<int> gsl_attachments;
  // Committed Gbps per physical arc id.
  std::vector<double> isl_arc_allocation;
};

enum class Method { kCpe, kSuperDinic, kSuperDinicSp };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct ThroughputReport {
  Method method = Method::kCpe;
  double aggregate_throughput_gbps = 0.0;
  // Per input session; empty for the max-flow baselines, which do not
  // attribute flow to sessions.
  std::vector<double> session_allocation_gbps;
  // Bottleneck capacity C(p) per session over the original graph.
  std::vector<double> session_path_capacity_gbps;
  double mean_path_capacity_gbps = 0.0;
  // Aggregate / (session count * mean path capacity).
  double mean_path_utilization = 0.0;
  double network_capacity_gbps = 0.0;
  // Aggregate / network capacity.
  double network_utilization = 0.0;
};

// Bottleneck ISL capacity along the session's path. Throws
// std::invalid_argument when a hop is not an arc of g.
double path_capacity(const TrafficSession& session, const CapacityGraph& g);

// Aggregate / (|P| * mean C(p)); requires at least one session.
double mean_path_utilization(const ThroughputReport& report);

// Constrained-path-expansion throughput. Sessions are processed strictly
// in input order; each one is head/tail-expanded under the GSL budget and
// the no-shortcut guards, then allocated the minimum of its residual path
// bottleneck, its terminal GSL shares, and its demand. Deterministic for a
// fixed session order. Throws InfeasibleError when the budget admits no
// attachments at all.
ThroughputReport cpe_throughput(std::span<const TrafficSession> sessions,
                               const CapacityGraph& g, const GslBudget& budget,
                               TrafficGraph* traffic_graph_out = nullptr);

// Multi-terminal max-flow baselines: session endpoints are attached to
// super terminals (with or without shortcut pruning) and one Dinic run
// reports the flow value. Utilizations are computed against the same
// session set as cpe_throughput.
ThroughputReport baseline_throughput(std::span<const TrafficSession> sessions,
                                     const CapacityGraph& g, Method method);

// Session file: one per line, "src_sat dst_sat demand_gbps|ELASTIC
// hop1,hop2,...", '#' starts a comment.
std::vector<TrafficSession> read_sessions(std::istream& in);
std::vector<TrafficSession> read_sessions_file(const std::string& path);
void write_sessions(std::span<const TrafficSession> sessions, std::ostream& out);

}  // namespace leocap
