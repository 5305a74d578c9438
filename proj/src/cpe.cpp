#include "leocap/cpe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "leocap/errors.hpp"

namespace leocap {

namespace {

std::string describe_session(std::size_t index) {
  return "session #" + std::to_string(index);
}

// Arc ids along the session path; throws when a hop is not an arc.
std::vector<std::int32_t> path_arcs(const TrafficSession& session, const CapacityGraph& g,
                                    std::size_t index) {
  if (session.path.size() < 2)
    throw std::invalid_argument(describe_session(index) + ": path needs >= 2 nodes");
  if (!(session.demand_gbps > 0.0))
    throw std::invalid_argument(describe_session(index) + ": demand must be > 0 or elastic");
  std::unordered_set<std::int32_t> seen;
  std::vector<std::int32_t> arcs;
  arcs.reserve(session.path.size() - 1);
  for (std::size_t i = 0; i < session.path.size(); ++i) {
    std::int32_t node = session.path[i];
    if (node < 0 || node >= g.vertex_count())
      throw std::invalid_argument(describe_session(index) + ": node id out of range");
    if (!seen.insert(node).second)
      throw std::invalid_argument(describe_session(index) + ": path repeats a node");
    if (i == 0) continue;
    auto arc = g.find_arc(session.path[i - 1], node);
    if (!arc)
      throw std::invalid_argument(describe_session(index) + ": hop " +
                                  std::to_string(session.path[i - 1]) + "->" +
                                  std::to_string(node) + " is not a link");
    arcs.push_back(*arc);
  }
  return arcs;
}

void fill_utilizations(ThroughputReport& report) {
  double sum_cap = 0.0;
  for (double c : report.session_path_capacity_gbps) sum_cap += c;
  std::size_t n = report.session_path_capacity_gbps.size();
  report.mean_path_capacity_gbps = n > 0 ? sum_cap / static_cast<double>(n) : 0.0;
  report.mean_path_utilization =
      sum_cap > 0.0 ? report.aggregate_throughput_gbps / sum_cap : 0.0;
  report.network_utilization =
      report.network_capacity_gbps > 0.0
          ? report.aggregate_throughput_gbps / report.network_capacity_gbps
          : 0.0;
}

std::string format_demand(double demand) {
  if (std::isinf(demand)) return "ELASTIC";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", demand);
  return buf;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::kCpe: return "cpe";
    case Method::kSuperDinic: return "super_dinic";
    case Method::kSuperDinicSp: return "super_dinic_sp";
  }
  throw std::invalid_argument("unknown method");
}

Method parse_method(const std::string& name) {
  if (name == "cpe") return Method::kCpe;
  if (name == "super_dinic") return Method::kSuperDinic;
  if (name == "super_dinic_sp") return Method::kSuperDinicSp;
  throw ConfigError("unknown method: " + name);
}

double path_capacity(const TrafficSession& session, const CapacityGraph& g) {
  double cap = std::numeric_limits<double>::infinity();
  for (std::int32_t arc : path_arcs(session, g, 0))
    cap = std::min(cap, g.arcs()[static_cast<std::size_t>(arc)].capacity_gbps);
  return cap;
}

double mean_path_utilization(const ThroughputReport& report) {
  std::size_t n = report.session_path_capacity_gbps.size();
  if (n == 0) throw std::invalid_argument("mean_path_utilization: no sessions");
  double sum_cap = 0.0;
  for (double c : report.session_path_capacity_gbps) sum_cap += c;
  if (sum_cap <= 0.0) return 0.0;
  return report.aggregate_throughput_gbps / sum_cap;
}

ThroughputReport cpe_throughput(std::span<const TrafficSession> sessions,
                               const CapacityGraph& g, const GslBudget& budget,
                               TrafficGraph* traffic_graph_out) {
  if (budget.max_attachments <= 0)
    throw InfeasibleError("GSL attachment budget is zero; no session can attach");
  if (!(budget.gsl_capacity_gbps >= 0.0))
    throw std::invalid_argument("GSL capacity must be >= 0");

  const std::size_t n_sats = static_cast<std::size_t>(g.vertex_count());
  std::vector<double> residual(g.arcs().size());
  for (std::size_t i = 0; i < residual.size(); ++i)
    residual[i] = g.arcs()[i].capacity_gbps;

  std::vector<int> n_gsl(n_sats, 0);
  std::vector<char> is_head_terminal(n_sats, 0);
  std::vector<char> is_tail_terminal(n_sats, 0);
  std::vector<double> allocation(g.arcs().size(), 0.0);

  ThroughputReport report;
  report.method = Method::kCpe;
  report.session_allocation_gbps.resize(sessions.size(), 0.0);
  report.session_path_capacity_gbps.resize(sessions.size(), 0.0);
  report.network_capacity_gbps = g.isl_capacity_sum();

  // Expansion-node bookkeeping for the expanded graph, built afterwards.
  struct Expansion {
    std::size_t session;
    std::int32_t satellite;
    bool is_head;
  };
  std::vector<Expansion> expansions;

  for (std::size_t i = 0; i < sessions.size(); ++i) {
    const TrafficSession& session = sessions[i];
    std::vector<std::int32_t> arcs = path_arcs(session, g, i);

    double cap = std::numeric_limits<double>::infinity();
    for (std::int32_t arc : arcs)
      cap = std::min(cap, g.arcs()[static_cast<std::size_t>(arc)].capacity_gbps);
    report.session_path_capacity_gbps[i] = cap;

    const std::size_t head = static_cast<std::size_t>(session.head());
    const std::size_t tail = static_cast<std::size_t>(session.tail());

    // Head expansion: refused when the budget is exhausted or when the
    // satellite already terminates traffic (that would wire the super
    // source and super sink to the same node).
    bool head_ok = n_gsl[head] < budget.max_attachments && !is_tail_terminal[head];
    if (head_ok) {
      ++n_gsl[head];
      is_head_terminal[head] = 1;
      expansions.push_back({i, session.head(), true});
    }
    bool tail_ok = n_gsl[tail] < budget.max_attachments && !is_head_terminal[tail];
    if (tail_ok) {
      ++n_gsl[tail];
      is_tail_terminal[tail] = 1;
      expansions.push_back({i, session.tail(), false});
    }

    double allocated = 0.0;
    if (head_ok && tail_ok) {
      double bottleneck = std::numeric_limits<double>::infinity();
      for (std::int32_t arc : arcs)
        bottleneck = std::min(bottleneck, residual[static_cast<std::size_t>(arc)]);
      // GSL shares at allocation time; later attachments shrink the share
      // but never claw back committed flow.
      double head_share = budget.gsl_capacity_gbps / n_gsl[head];
      double tail_share = budget.gsl_capacity_gbps / n_gsl[tail];
      allocated = std::min({bottleneck, head_share, tail_share, session.demand_gbps});
      for (std::int32_t arc : arcs) {
        residual[static_cast<std::size_t>(arc)] -= allocated;
        allocation[static_cast<std::size_t>(arc)] += allocated;
      }
    }
    report.session_allocation_gbps[i] = allocated;
    report.aggregate_throughput_gbps += allocated;
  }

  fill_utilizations(report);

  if (traffic_graph_out != nullptr) {
    TrafficGraph& tg = *traffic_graph_out;
    tg = TrafficGraph{};
    tg.expanded = CapacityGraph(g.vertex_count());
    for (std::size_t arc = 0; arc < allocation.size(); ++arc)
      if (allocation[arc] > 0.0)
        tg.expanded.add_arc(g.arcs()[arc].src, g.arcs()[arc].dst, allocation[arc],
                            g.arcs()[arc].length_km);
    tg.super_source = tg.expanded.add_vertex();
    tg.super_sink = tg.expanded.add_vertex();
    tg.head_vertex.assign(sessions.size(), -1);
    tg.tail_vertex.assign(sessions.size(), -1);
    for (const Expansion& x : expansions) {
      int node = tg.expanded.add_vertex();
      // Final even split across all attachments of this satellite.
      double share = budget.gsl_capacity_gbps / n_gsl[static_cast<std::size_t>(x.satellite)];
      if (x.is_head) {
        tg.expanded.add_arc(tg.super_source, node, CapacityGraph::kUnbounded);
        tg.expanded.add_arc(node, x.satellite, share);
        tg.head_vertex[x.session] = node;
      } else {
        tg.expanded.add_arc(x.satellite, node, share);
        tg.expanded.add_arc(node, tg.super_sink, CapacityGraph::kUnbounded);
        tg.tail_vertex[x.session] = node;
      }
    }
    tg.gsl_attachments = n_gsl;
    tg.isl_arc_allocation = allocation;
  }
  return report;
}

ThroughputReport baseline_throughput(std::span<const TrafficSession> sessions,
                                     const CapacityGraph& g, Method method) {
  if (method == Method::kCpe)
    throw std::invalid_argument("baseline_throughput expects a baseline method");
  if (sessions.empty()) throw std::invalid_argument("baseline_throughput: no sessions");

  ThroughputReport report;
  report.method = method;
  report.network_capacity_gbps = g.isl_capacity_sum();
  report.session_path_capacity_gbps.resize(sessions.size());

  std::vector<int> sources, sinks;
  sources.reserve(sessions.size());
  sinks.reserve(sessions.size());
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    std::vector<std::int32_t> arcs = path_arcs(sessions[i], g, i);
    double cap = std::numeric_limits<double>::infinity();
    for (std::int32_t arc : arcs)
      cap = std::min(cap, g.arcs()[static_cast<std::size_t>(arc)].capacity_gbps);
    report.session_path_capacity_gbps[i] = cap;
    sources.push_back(sessions[i].head());
    sinks.push_back(sessions[i].tail());
  }

  SuperTerminals terminals = attach_super_terminals(
      g, sources, sinks, method == Method::kSuperDinicSp);
  FlowResult flow =
      dinic_max_flow(terminals.graph, terminals.super_source, terminals.super_sink);
  report.aggregate_throughput_gbps = flow.max_flow_gbps;
  fill_utilizations(report);
  return report;
}

std::vector<TrafficSession> read_sessions(std::istream& in) {
  std::vector<TrafficSession> sessions;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    long src, dst;
    std::string demand_token, hops_token;
    if (!(ls >> src >> dst >> demand_token >> hops_token)) {
      std::string rest;
      std::istringstream check(raw);
      if (check >> rest)
        throw std::invalid_argument("session file: malformed line " + std::to_string(line_no));
      continue;
    }
    TrafficSession session;
    session.demand_gbps =
        (demand_token == "ELASTIC") ? kElasticDemand : std::stod(demand_token);
    std::istringstream hs(hops_token);
    std::string hop;
    while (std::getline(hs, hop, ','))
      session.path.push_back(static_cast<std::int32_t>(std::stol(hop)));
    if (session.path.size() < 2 || session.path.front() != src || session.path.back() != dst)
      throw std::invalid_argument("session file: path/endpoint mismatch on line " +
                                  std::to_string(line_no));
    sessions.push_back(std::move(session));
  }
  return sessions;
}

std::vector<TrafficSession> read_sessions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open session file: " + path);
  return read_sessions(in);
}

void write_sessions(std::span<const TrafficSession> sessions, std::ostream& out) {
  for (const TrafficSession& s : sessions) {
    out << s.head() << ' ' << s.tail() << ' ' << format_demand(s.demand_gbps) << ' ';
    for (std::size_t i = 0; i < s.path.size(); ++i) {
      if (i > 0) out << ',';
      out << s.path[i];
    }
    out << '\n';
  }
}

}  // namespace leocap
