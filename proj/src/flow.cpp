#include "leocap/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace leocap {

namespace {

constexpr double kEps = 1e-12;

std::int64_t arc_key(int src, int dst) {
  return (static_cast<std::int64_t>(src) << 32) |
         static_cast<std::int64_t>(static_cast<std::uint32_t>(dst));
}

void check_vertex(const CapacityGraph& g, int v, const char* what) {
  if (v < 0 || v >= g.vertex_count())
    throw std::invalid_argument(std::string(what) + ": vertex id out of range");
}

std::string format_number(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

CapacityGraph::CapacityGraph(int vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

int CapacityGraph::add_vertex() {
  adjacency_.emplace_back();
  return static_cast<int>(adjacency_.size()) - 1;
}

int CapacityGraph::add_arc(int src, int dst, double capacity_gbps, double length_km) {
  check_vertex(*this, src, "add_arc");
  check_vertex(*this, dst, "add_arc");
  if (!(capacity_gbps >= 0.0))  // rejects NaN and negatives
    throw std::invalid_argument("arc capacity must be >= 0");
  if (length_km < 0.0) throw std::invalid_argument("arc length must be >= 0");
  int id = static_cast<int>(arcs_.size());
  arcs_.push_back(Arc{static_cast<std::int32_t>(src), static_cast<std::int32_t>(dst),
                      capacity_gbps, length_km});
  adjacency_[static_cast<std::size_t>(src)].push_back(id);
  arc_lookup_.emplace(arc_key(src, dst), id);
  return id;
}

int CapacityGraph::add_isl(int u, int v, double capacity_gbps, double length_km) {
  if (u == v) throw std::invalid_argument("ISL endpoints must differ");
  int fwd = add_arc(u, v, capacity_gbps, length_km);
  int rev = add_arc(v, u, capacity_gbps, length_km);
  isls_.push_back(IslEdge{static_cast<std::int32_t>(u), static_cast<std::int32_t>(v),
                          fwd, rev, capacity_gbps, length_km});
  return static_cast<int>(isls_.size()) - 1;
}

std::optional<std::int32_t> CapacityGraph::find_arc(int src, int dst) const {
  auto it = arc_lookup_.find(arc_key(src, dst));
  if (it == arc_lookup_.end()) return std::nullopt;
  return it->second;
}

double CapacityGraph::total_finite_capacity() const {
  double total = 0.0;
  for (const Arc& a : arcs_)
    if (!std::isinf(a.capacity_gbps)) total += a.capacity_gbps;
  return total;
}

double CapacityGraph::isl_capacity_sum() const {
  double total = 0.0;
  for (const IslEdge& e : isls_) total += e.capacity_gbps;
  return total;
}

void CapacityGraph::set_arc_capacity(int arc_id, double capacity_gbps) {
  if (arc_id < 0 || arc_id >= static_cast<int>(arcs_.size()))
    throw std::invalid_argument("set_arc_capacity: arc id out of range");
  if (!(capacity_gbps >= 0.0)) throw std::invalid_argument("arc capacity must be >= 0");
  arcs_[static_cast<std::size_t>(arc_id)].capacity_gbps = capacity_gbps;
}

void CapacityGraph::set_isl_capacity(int edge_id, double capacity_gbps) {
  if (edge_id < 0 || edge_id >= isl_count())
    throw std::invalid_argument("set_isl_capacity: edge id out of range");
  IslEdge& e = isls_[static_cast<std::size_t>(edge_id)];
  e.capacity_gbps = capacity_gbps;
  set_arc_capacity(e.arc_fwd, capacity_gbps);
  set_arc_capacity(e.arc_rev, capacity_gbps);
}

ResidualGraph::ResidualGraph(const CapacityGraph& g)
    : head_(static_cast<std::size_t>(g.vertex_count())),
      level_(static_cast<std::size_t>(g.vertex_count())),
      iter_(static_cast<std::size_t>(g.vertex_count())) {
  const double sentinel = g.unbounded_sentinel();
  arcs_.reserve(g.arcs().size() * 2);
  arc_of_capacity_arc_.reserve(g.arcs().size());
  resolved_capacity_.reserve(g.arcs().size());
  for (const Arc& a : g.arcs()) {
    double cap = std::isinf(a.capacity_gbps) ? sentinel : a.capacity_gbps;
    arc_of_capacity_arc_.push_back(static_cast<std::int32_t>(arcs_.size()));
    resolved_capacity_.push_back(cap);
    head_[static_cast<std::size_t>(a.src)].push_back(static_cast<std::int32_t>(arcs_.size()));
    arcs_.push_back(RArc{a.dst, cap});
    head_[static_cast<std::size_t>(a.dst)].push_back(static_cast<std::int32_t>(arcs_.size()));
    arcs_.push_back(RArc{a.src, 0.0});
  }
}

bool ResidualGraph::build_levels(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<int> queue;
  level_[static_cast<std::size_t>(source)] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (std::int32_t idx : head_[static_cast<std::size_t>(u)]) {
      const RArc& a = arcs_[static_cast<std::size_t>(idx)];
      if (a.residual <= kEps) continue;
      if (level_[static_cast<std::size_t>(a.dst)] != -1) continue;
      level_[static_cast<std::size_t>(a.dst)] = level_[static_cast<std::size_t>(u)] + 1;
      if (a.dst == sink) return true;
      queue.push_back(a.dst);
    }
  }
  return level_[static_cast<std::size_t>(sink)] != -1;
}

double ResidualGraph::push(int vertex, int sink, double limit) {
  if (vertex == sink) return limit;
  auto& arcs_of = head_[static_cast<std::size_t>(vertex)];
  for (std::int32_t& i = iter_[static_cast<std::size_t>(vertex)];
       i < static_cast<std::int32_t>(arcs_of.size()); ++i) {
    std::int32_t idx = arcs_of[static_cast<std::size_t>(i)];
    RArc& a = arcs_[static_cast<std::size_t>(idx)];
    if (a.residual <= kEps) continue;
    if (level_[static_cast<std::size_t>(a.dst)] !=
        level_[static_cast<std::size_t>(vertex)] + 1)
      continue;
    double got = push(a.dst, sink, std::min(limit, a.residual));
    if (got > 0.0) {
      a.residual -= got;
      arcs_[static_cast<std::size_t>(idx ^ 1)].residual += got;
      return got;
    }
  }
  return 0.0;
}

double ResidualGraph::max_flow(int source, int sink) {
  if (source == sink) throw std::invalid_argument("max_flow: source equals sink");
  double total = 0.0;
  while (build_levels(source, sink)) {
    std::fill(iter_.begin(), iter_.end(), 0);
    for (;;) {
      double got = push(source, sink, std::numeric_limits<double>::infinity());
      if (got <= 0.0) break;
      total += got;
    }
  }
  return total;
}

double ResidualGraph::residual(int capacity_arc_id) const {
  std::int32_t idx = arc_of_capacity_arc_.at(static_cast<std::size_t>(capacity_arc_id));
  return arcs_[static_cast<std::size_t>(idx)].residual;
}

double ResidualGraph::flow(int capacity_arc_id) const {
  return resolved_capacity_.at(static_cast<std::size_t>(capacity_arc_id)) -
         residual(capacity_arc_id);
}

std::vector<double> ResidualGraph::arc_flows() const {
  std::vector<double> flows(arc_of_capacity_arc_.size());
  for (std::size_t i = 0; i < flows.size(); ++i)
    flows[i] = flow(static_cast<int>(i));
  return flows;
}

int ResidualGraph::add_gate_arc(int src, int dst, double capacity_gbps) {
  if (src < 0 || src >= vertex_count() || dst < 0 || dst >= vertex_count())
    throw std::invalid_argument("add_gate_arc: vertex id out of range");
  int gate = static_cast<int>(arcs_.size());
  head_[static_cast<std::size_t>(src)].push_back(static_cast<std::int32_t>(arcs_.size()));
  arcs_.push_back(RArc{static_cast<std::int32_t>(dst), capacity_gbps});
  head_[static_cast<std::size_t>(dst)].push_back(static_cast<std::int32_t>(arcs_.size()));
  arcs_.push_back(RArc{static_cast<std::int32_t>(src), 0.0});
  gate_capacity_.push_back(capacity_gbps);
  gate_arc_.push_back(gate);
  return static_cast<int>(gate_arc_.size()) - 1;
}

double ResidualGraph::gate_flow(int gate_id) const {
  int idx = gate_arc_.at(static_cast<std::size_t>(gate_id));
  return gate_capacity_[static_cast<std::size_t>(gate_id)] -
         arcs_[static_cast<std::size_t>(idx)].residual;
}

void ResidualGraph::close_gate(int gate_id) {
  int idx = gate_arc_.at(static_cast<std::size_t>(gate_id));
  arcs_[static_cast<std::size_t>(idx)].residual = 0.0;
  arcs_[static_cast<std::size_t>(idx) + 1].residual = 0.0;
}

FlowResult dinic_max_flow(const CapacityGraph& g, int source, int sink) {
  check_vertex(g, source, "dinic_max_flow");
  check_vertex(g, sink, "dinic_max_flow");
  if (source == sink) throw std::invalid_argument("dinic_max_flow: source equals sink");
  ResidualGraph r(g);
  FlowResult result;
  result.max_flow_gbps = r.max_flow(source, sink);
  result.arc_flow_gbps = r.arc_flows();
  return result;
}

SuperTerminals attach_super_terminals(const CapacityGraph& g,
                                      std::span<const int> sources,
                                      std::span<const int> sinks,
                                      bool prune_shortcuts) {
  if (sources.empty() || sinks.empty())
    throw std::invalid_argument("attach_super_terminals: empty terminal set");
  SuperTerminals out;
  out.graph = g;
  out.super_source = out.graph.add_vertex();
  out.super_sink = out.graph.add_vertex();

  std::vector<char> attached_src(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<char> attached_snk(static_cast<std::size_t>(g.vertex_count()), 0);

  auto attach = [&](int node, bool as_source) {
    check_vertex(g, node, "attach_super_terminals");
    auto& same = as_source ? attached_src : attached_snk;
    auto& other = as_source ? attached_snk : attached_src;
    std::size_t n = static_cast<std::size_t>(node);
    if (same[n]) return;
    if (prune_shortcuts && other[n]) return;
    same[n] = 1;
    if (as_source)
      out.graph.add_arc(out.super_source, node, CapacityGraph::kUnbounded);
    else
      out.graph.add_arc(node, out.super_sink, CapacityGraph::kUnbounded);
  };

  // Pairwise in input order, so the earlier of a node's source/sink roles
  // wins under pruning.
  std::size_t n = std::max(sources.size(), sinks.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < sources.size()) attach(sources[i], true);
    if (i < sinks.size()) attach(sinks[i], false);
  }
  return out;
}

MultiCommodityResult sequential_multicommodity(const CapacityGraph& g,
                                               std::span<const Commodity> commodities) {
  if (commodities.empty())
    throw std::invalid_argument("sequential_multicommodity: no commodities");
  CapacityGraph work = g;
  int gate_vertex = work.add_vertex();
  const double sentinel = g.unbounded_sentinel();

  ResidualGraph r(work);
  MultiCommodityResult result;
  result.commodity_flow_gbps.reserve(commodities.size());
  for (const Commodity& k : commodities) {
    check_vertex(g, k.source, "sequential_multicommodity");
    check_vertex(g, k.sink, "sequential_multicommodity");
    if (k.source == k.sink) {
      result.commodity_flow_gbps.push_back(0.0);
      continue;
    }
    double demand = std::isinf(k.demand_gbps) ? sentinel : k.demand_gbps;
    if (demand < 0.0) throw std::invalid_argument("commodity demand must be >= 0");
    int gate = r.add_gate_arc(gate_vertex, k.source, demand);
    r.max_flow(gate_vertex, k.sink);
    result.commodity_flow_gbps.push_back(r.gate_flow(gate));
    r.close_gate(gate);
  }
  result.combined.arc_flow_gbps = r.arc_flows();
  result.combined.arc_flow_gbps.resize(g.arcs().size());
  result.combined.max_flow_gbps = 0.0;
  for (double f : result.commodity_flow_gbps) result.combined.max_flow_gbps += f;
  return result;
}

CapacityGraph load_edge_list(std::istream& in) {
  struct Line {
    int src, dst;
    double cap, len;
  };
  std::vector<Line> lines;
  int max_vertex = -1;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line ln{0, 0, 0.0, 0.0};
    std::string cap_token;
    if (!(ls >> ln.src >> ln.dst >> cap_token)) {
      std::string rest;
      std::istringstream check(raw);
      if (check >> rest)
        throw std::invalid_argument("edge list: malformed line " + std::to_string(line_no));
      continue;  // blank or comment-only line
    }
    ln.cap = (cap_token == "inf") ? CapacityGraph::kUnbounded : std::stod(cap_token);
    ls >> ln.len;  // optional
    if (ln.src < 0 || ln.dst < 0)
      throw std::invalid_argument("edge list: negative vertex id on line " +
                                  std::to_string(line_no));
    max_vertex = std::max({max_vertex, ln.src, ln.dst});
    lines.push_back(ln);
  }

  CapacityGraph g(max_vertex + 1);
  std::vector<char> consumed(lines.size(), 0);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (consumed[i]) continue;
    bool paired = false;
    for (std::size_t j = i + 1; j < lines.size() && !paired; ++j) {
      if (consumed[j]) continue;
      if (lines[j].src == lines[i].dst && lines[j].dst == lines[i].src &&
          lines[j].cap == lines[i].cap && lines[j].len == lines[i].len) {
        g.add_isl(lines[i].src, lines[i].dst, lines[i].cap, lines[i].len);
        consumed[j] = 1;
        paired = true;
      }
    }
    if (!paired) g.add_arc(lines[i].src, lines[i].dst, lines[i].cap, lines[i].len);
    consumed[i] = 1;
  }
  return g;
}

CapacityGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  return load_edge_list(in);
}

void write_edge_list(const CapacityGraph& g, std::ostream& out) {
  for (const Arc& a : g.arcs()) {
    out << a.src << ' ' << a.dst << ' ' << format_number(a.capacity_gbps);
    if (a.length_km != 0.0) out << ' ' << format_number(a.length_km);
    out << '\n';
  }
}

}  // namespace leocap
