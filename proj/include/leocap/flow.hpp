#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace leocap {

// Directed arc with capacity in Gbps. length_km is carried for routing
// weight and is 0 for synthetic (super/expansion) arcs.
struct Arc {
  std::int32_t src = 0;
  std::int32_t dst = 0;
  double capacity_gbps = 0.0;
  double length_km = 0.0;
};

// An undirected inter-satellite link, stored as the pair of directed arcs
// (arc_fwd: u->v, arc_rev: v->u) of equal capacity and length. Reliability
// state and network-capacity accounting attach to the undirected link.
struct IslEdge {
  std::int32_t u = 0;
  std::int32_t v = 0;
  std::int32_t arc_fwd = 0;
  std::int32_t arc_rev = 0;
  double capacity_gbps = 0.0;
  double length_km = 0.0;
};

// Weighted directed graph over satellites plus synthetic terminals.
// Capacities are non-negative; kUnbounded marks super-links whose capacity
// is resolved to a finite sentinel when a ResidualGraph is built.
class CapacityGraph {
 public:
  static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

  CapacityGraph() = default;
  explicit CapacityGraph(int vertex_count);

  int add_vertex();
  int vertex_count() const { return static_cast<int>(adjacency_.size()); }

  // Adds a directed arc and returns its id. Capacity must be >= 0 or
  // kUnbounded.
  int add_arc(int src, int dst, double capacity_gbps, double length_km = 0.0);

  // Adds an undirected ISL as a pair of directed arcs; returns the edge id.
  int add_isl(int u, int v, double capacity_gbps, double length_km);

  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<IslEdge>& isls() const { return isls_; }
  int isl_count() const { return static_cast<int>(isls_.size()); }
  const std::vector<std::int32_t>& out_arcs(int vertex) const {
    return adjacency_[static_cast<std::size_t>(vertex)];
  }

  // First arc src->dst, if any.
  std::optional<std::int32_t> find_arc(int src, int dst) const;

  // Sum of all finite arc capacities.
  double total_finite_capacity() const;
  // Finite stand-in for kUnbounded: strictly greater than the sum of all
  // finite capacities, so no combination of real links can match it.
  double unbounded_sentinel() const { return total_finite_capacity() + 1.0; }

  // Network capacity in the sense of "sum of ISL capacities", each
  // undirected link counted once.
  double isl_capacity_sum() const;

  void set_arc_capacity(int arc_id, double capacity_gbps);
  // Zeroes both directed arcs of an undirected ISL (link down at some t).
  void set_isl_capacity(int edge_id, double capacity_gbps);

 private:
  std::vector<Arc> arcs_;
  std::vector<IslEdge> isls_;
  std::vector<std::vector<std::int32_t>> adjacency_;
  std::unordered_map<std::int64_t, std::int32_t> arc_lookup_;
};

struct FlowResult {
  double max_flow_gbps = 0.0;
  // Flow on each arc of the input graph, indexed by arc id.
  std::vector<double> arc_flow_gbps;
};

// Residual network with paired reverse arcs; runs Dinic blocking-flow
// max-flow. One instance is single-writer; run independent computations on
// separate instances.
class ResidualGraph {
 public:
  explicit ResidualGraph(const CapacityGraph& g);

  // Augments from source to sink until no residual path remains; returns
  // the flow added by this call. Accumulates across calls.
  double max_flow(int source, int sink);

  double residual(int capacity_arc_id) const;
  double flow(int capacity_arc_id) const;
  std::vector<double> arc_flows() const;

  // Adds a gating arc (used to cap one commodity's flow); returns a handle
  // usable with gate_flow()/close_gate().
  int add_gate_arc(int src, int dst, double capacity_gbps);
  double gate_flow(int gate_id) const;
  void close_gate(int gate_id);

  int vertex_count() const { return static_cast<int>(head_.size()); }

 private:
  struct RArc {
    std::int32_t dst;
    double residual;
  };

  bool build_levels(int source, int sink);
  double push(int vertex, int sink, double limit);

  std::vector<RArc> arcs_;               // arc i pairs with i^1
  std::vector<std::vector<std::int32_t>> head_;
  std::vector<std::int32_t> level_;
  std::vector<std::int32_t> iter_;
  std::vector<std::int32_t> arc_of_capacity_arc_;  // capacity arc id -> residual arc
  std::vector<double> resolved_capacity_;          // sentinel-resolved capacities
  std::vector<std::int32_t> gate_arc_;
  std::vector<double> gate_capacity_;
};

FlowResult dinic_max_flow(const CapacityGraph& g, int source, int sink);

struct SuperTerminals {
  CapacityGraph graph;
  int super_source = -1;
  int super_sink = -1;
};

// Adds a super source with unbounded arcs to each source and arcs from each
// sink to a super sink. Attachments are processed pairwise in input order
// (sources[0], sinks[0], sources[1], ...); duplicates on the same side are
// attached once. With prune_shortcuts set, a node already attached on one
// side is never attached on the other, which removes the spurious
// source->node->sink two-arc flow that otherwise appears when the sets
// overlap.
SuperTerminals attach_super_terminals(const CapacityGraph& g,
                                      std::span<const int> sources,
                                      std::span<const int> sinks,
                                      bool prune_shortcuts);

struct Commodity {
  int source = 0;
  int sink = 0;
  // kUnbounded for an uncapped commodity.
  double demand_gbps = CapacityGraph::kUnbounded;
};

struct MultiCommodityResult {
  // Flow achieved per commodity, in input order.
  std::vector<double> commodity_flow_gbps;
  // Aggregate flow assignment on the input graph after all commodities.
  FlowResult combined;
};

// Greedy sequential decomposition: each commodity in turn gets a max flow
// on the current residual graph, capped by its demand through a gating arc.
// The result is an order-dependent lower bound on the multi-commodity
// optimum.
MultiCommodityResult sequential_multicommodity(const CapacityGraph& g,
                                               std::span<const Commodity> commodities);

// Plain-text edge list: one arc per line "src dst capacity_gbps [length_km]",
// '#' starts a comment. Reciprocal arcs of equal capacity are paired into
// undirected ISLs on load.
CapacityGraph load_edge_list(std::istream& in);
CapacityGraph load_edge_list_file(const std::string& path);
void write_edge_list(const CapacityGraph& g, std::ostream& out);

}  // namespace leocap
