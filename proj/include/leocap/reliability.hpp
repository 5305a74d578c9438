#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "leocap/flow.hpp"

namespace leocap {

// Renewal on/off process for one ISL: up-durations are i.i.d. exponential
// with mean T/lambda (lambda failures per orbital period T), every outage
// lasts exactly sigma minutes, and the link starts a fresh up-interval at
// t = 0. lambda = 0 means the link never fails.
struct IslReliabilityProcess {
  double lambda_per_period = 0.0;
  double sigma_min = 0.0;
  double orbital_period_min = 0.0;
  std::uint64_t seed = 0;
};

// One realization of the process over [0, horizon]: contiguous alternating
// up/down intervals starting up at t = 0. Intervals are left-closed, so a
// query exactly on a boundary reads the interval being entered.
class AvailabilityTimeline {
 public:
  AvailabilityTimeline(std::vector<double> bounds, double horizon_min);

  double horizon_min() const { return horizon_min_; }
  // Segment i spans [bounds()[i], bounds()[i+1]) and is up iff i is even.
  const std::vector<double>& bounds() const { return bounds_; }
  std::vector<std::pair<double, double>> up_intervals() const;

  // 1 if the link is up at t (minutes), 0 if down. Throws std::out_of_range
  // outside [0, horizon].
  int availability(double t_min) const;

  // Fraction of [t0, t1] spent up (exact integral of the indicator).
  double up_fraction(double t0_min, double t1_min) const;

 private:
  std::vector<double> bounds_;
  double horizon_min_;
};

// Draws up-durations until the horizon is covered. Deterministic for a
// given process seed.
AvailabilityTimeline sample_timeline(const IslReliabilityProcess& proc, double horizon_min);

int availability(const AvailabilityTimeline& timeline, double t_min);

struct ReliabilityParams {
  double lambda_per_period = 0.0;
  double sigma_min = 0.0;
  double orbital_period_min = 0.0;
};

// One independent timeline per undirected ISL of g, indexed by edge id.
// Per-edge streams are derived from (seed, edge_id), so a sweep over
// (lambda, sigma) reuses the same underlying draws.
std::vector<AvailabilityTimeline> sample_isl_timelines(const CapacityGraph& g,
                                                       const ReliabilityParams& params,
                                                       std::uint64_t seed,
                                                       double horizon_min,
                                                       unsigned jobs = 1);

// Instantaneous network capacity: sum of capacities of ISLs whose
// availability at t is 1, each undirected link counted once. Requires one
// timeline per ISL.
double network_capacity_at(const CapacityGraph& g,
                           const std::vector<AvailabilityTimeline>& timelines,
                           double t_min);

// Time-averaged capacity over [t0, t1] via the exact per-link up-time
// integral (the Monte-Carlo estimate of the closed form below).
double time_averaged_capacity(const CapacityGraph& g,
                              const std::vector<AvailabilityTimeline>& timelines,
                              double t0_min, double t1_min);

// Closed-form expected capacity |E| * C_e * T / (T + sigma * lambda).
double expected_capacity(int n_edges, double isl_capacity_gbps, double orbital_period_min,
                         double lambda_per_period, double sigma_min);

// Copy of g with every ISL that is down at t carrying zero capacity. Arcs
// stay in place so session paths remain structurally valid.
CapacityGraph masked_topology(const CapacityGraph& g,
                              const std::vector<AvailabilityTimeline>& timelines,
                              double t_min);

}  // namespace leocap
