#include "leocap/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leocap/parallel.hpp"
#include "leocap/random.hpp"

namespace leocap {

AvailabilityTimeline::AvailabilityTimeline(std::vector<double> bounds, double horizon_min)
    : bounds_(std::move(bounds)), horizon_min_(horizon_min) {
  if (bounds_.size() < 2 || bounds_.front() != 0.0 || bounds_.back() < horizon_min_)
    throw std::invalid_argument("timeline must cover [0, horizon]");
}

std::vector<std::pair<double, double>> AvailabilityTimeline::up_intervals() const {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < bounds_.size(); i += 2)
    out.emplace_back(bounds_[i], bounds_[i + 1]);
  return out;
}

int AvailabilityTimeline::availability(double t_min) const {
  if (!(t_min >= 0.0) || t_min > horizon_min_)
    throw std::out_of_range("availability query outside [0, horizon]");
  auto it = std::upper_bound(bounds_.begin(), bounds_.end(), t_min);
  auto idx = static_cast<std::size_t>(it - bounds_.begin()) - 1;
  if (idx + 1 >= bounds_.size()) idx = bounds_.size() - 2;  // t at the final bound
  return (idx % 2 == 0) ? 1 : 0;
}

double AvailabilityTimeline::up_fraction(double t0_min, double t1_min) const {
  if (!(t0_min >= 0.0) || t1_min > horizon_min_ || !(t0_min < t1_min))
    throw std::out_of_range("up_fraction window outside [0, horizon]");
  double up = 0.0;
  for (std::size_t i = 0; i + 1 < bounds_.size(); i += 2) {
    double lo = std::max(bounds_[i], t0_min);
    double hi = std::min(bounds_[i + 1], t1_min);
    if (hi > lo) up += hi - lo;
    if (bounds_[i] > t1_min) break;
  }
  return up / (t1_min - t0_min);
}

AvailabilityTimeline sample_timeline(const IslReliabilityProcess& proc, double horizon_min) {
  if (!(horizon_min > 0.0)) throw std::invalid_argument("horizon must be > 0");
  if (proc.lambda_per_period < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (proc.sigma_min < 0.0) throw std::invalid_argument("sigma must be >= 0");
  if (!(proc.orbital_period_min > 0.0))
    throw std::invalid_argument("orbital period must be > 0");

  std::vector<double> bounds{0.0};
  if (proc.lambda_per_period == 0.0) {
    bounds.push_back(horizon_min);
    return AvailabilityTimeline(std::move(bounds), horizon_min);
  }

  const double mean_up = proc.orbital_period_min / proc.lambda_per_period;
  Rng rng(proc.seed);
  bool up = true;
  while (bounds.back() < horizon_min) {
    double len = up ? rng.exponential(mean_up) : proc.sigma_min;
    bounds.push_back(bounds.back() + len);
    up = !up;
  }
  return AvailabilityTimeline(std::move(bounds), horizon_min);
}

int availability(const AvailabilityTimeline& timeline, double t_min) {
  return timeline.availability(t_min);
}

std::vector<AvailabilityTimeline> sample_isl_timelines(const CapacityGraph& g,
                                                       const ReliabilityParams& params,
                                                       std::uint64_t seed,
                                                       double horizon_min, unsigned jobs) {
  std::vector<AvailabilityTimeline> timelines(
      static_cast<std::size_t>(g.isl_count()),
      AvailabilityTimeline({0.0, horizon_min}, horizon_min));
  parallel_for(static_cast<std::size_t>(g.isl_count()), jobs, [&](std::size_t edge) {
    IslReliabilityProcess proc{params.lambda_per_period, params.sigma_min,
                               params.orbital_period_min,
                               derive_seed(seed, {static_cast<std::uint64_t>(edge)})};
    timelines[edge] = sample_timeline(proc, horizon_min);
  });
  return timelines;
}

namespace {

void check_timelines(const CapacityGraph& g,
                     const std::vector<AvailabilityTimeline>& timelines) {
  if (static_cast<int>(timelines.size()) != g.isl_count())
    throw std::invalid_argument("one timeline per undirected ISL required");
}

}  // namespace

double network_capacity_at(const CapacityGraph& g,
                           const std::vector<AvailabilityTimeline>& timelines,
                           double t_min) {
  check_timelines(g, timelines);
  double total = 0.0;
  for (int e = 0; e < g.isl_count(); ++e)
    if (timelines[static_cast<std::size_t>(e)].availability(t_min) == 1)
      total += g.isls()[static_cast<std::size_t>(e)].capacity_gbps;
  return total;
}

double time_averaged_capacity(const CapacityGraph& g,
                              const std::vector<AvailabilityTimeline>& timelines,
                              double t0_min, double t1_min) {
  check_timelines(g, timelines);
  double total = 0.0;
  for (int e = 0; e < g.isl_count(); ++e)
    total += g.isls()[static_cast<std::size_t>(e)].capacity_gbps *
             timelines[static_cast<std::size_t>(e)].up_fraction(t0_min, t1_min);
  return total;
}

double expected_capacity(int n_edges, double isl_capacity_gbps, double orbital_period_min,
                         double lambda_per_period, double sigma_min) {
  if (!(orbital_period_min > 0.0)) throw std::invalid_argument("orbital period must be > 0");
  if (n_edges < 0) throw std::invalid_argument("edge count must be >= 0");
  return n_edges * isl_capacity_gbps * orbital_period_min /
         (orbital_period_min + sigma_min * lambda_per_period);
}

CapacityGraph masked_topology(const CapacityGraph& g,
                              const std::vector<AvailabilityTimeline>& timelines,
                              double t_min) {
  check_timelines(g, timelines);
  CapacityGraph masked = g;
  for (int e = 0; e < g.isl_count(); ++e)
    if (timelines[static_cast<std::size_t>(e)].availability(t_min) == 0)
      masked.set_isl_capacity(e, 0.0);
  return masked;
}

}  // namespace leocap
