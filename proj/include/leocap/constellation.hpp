#pragma once

#include <array>
#include <string>
#include <vector>

#include "leocap/flow.hpp"

namespace leocap {

// Spherical-Earth two-body constants. Orbit model is circular with no
// perturbations; link lengths and periods do not need more.
constexpr double kEarthRadiusKm = 6371.0;
constexpr double kMuKm3PerS2 = 398600.4418;
// Sidereal rotation rate, rad/s.
constexpr double kEarthRotationRadPerS = 7.2921159e-5;

// Inter-plane phasing rule. Eq1 spreads slots by 2*pi*F / (M_P * (N_P - 1));
// Classical is the Walker textbook 2*pi*F / (N_P * M_P).
enum class PhasingConvention { kEq1, kClassicalWalker };

// Walker-delta shell: n_planes orbit planes spread over 360 deg of RAAN,
// sats_per_plane satellites per plane, phase factor F, one shared altitude
// and inclination.
struct ConstellationSpec {
  std::string name;
  int n_planes = 0;           // N_P
  int sats_per_plane = 0;     // M_P
  int phase_factor = 0;       // F in [0, N_P - 1]
  double inclination_deg = 0.0;
  double altitude_km = 0.0;

  int satellite_count() const { return n_planes * sats_per_plane; }
  // Throws std::invalid_argument when any field is out of range.
  void validate() const;
};

struct SatelliteNode {
  std::int32_t sat_id = 0;
  std::int32_t plane_idx = 0;
  std::int32_t slot_idx = 0;

  static SatelliteNode from_id(const ConstellationSpec& spec, int sat_id);
  static SatelliteNode from_plane_slot(const ConstellationSpec& spec, int plane, int slot);
};

// Seconds since scenario epoch.
struct EpochTime {
  double seconds = 0.0;
  static EpochTime from_minutes(double m) { return EpochTime{m * 60.0}; }
};

struct OrbitalState {
  std::array<double, 3> position_ecef_km{};
  double orbital_period_min = 0.0;
};

// Inter-plane phase offset in radians; 0 for a single plane.
double phase_offset(const ConstellationSpec& spec,
                    PhasingConvention convention = PhasingConvention::kEq1);

// Circular-orbit period from altitude: 2*pi*sqrt(a^3/mu), minutes.
double orbital_period_min(const ConstellationSpec& spec);

// Position in the non-rotating equatorial frame at epoch t. Plane p has
// RAAN 2*pi*p/N_P; argument of latitude is 2*pi*slot/M_P + plane*phase
// + 2*pi*t/T, measured from the ascending node.
std::array<double, 3> eci_position(const ConstellationSpec& spec, const SatelliteNode& sat,
                                   EpochTime t,
                                   PhasingConvention convention = PhasingConvention::kEq1);

// ECEF state: the ECI position rotated by the Earth rotation angle
// (frames coincide at t = 0).
OrbitalState propagate(const ConstellationSpec& spec, const SatelliteNode& sat, EpochTime t,
                       PhasingConvention convention = PhasingConvention::kEq1);

struct TopologyOptions {
  double isl_capacity_gbps = 10.0;
  // Keep the plane N_P-1 <-> plane 0 inter-plane links.
  bool cross_seam = true;
  PhasingConvention phasing = PhasingConvention::kEq1;
};

// +Grid ISL pattern: every satellite links to slot +/-1 in its own plane and
// to the same slot in planes +/-1. Vertices are sat_ids; each undirected ISL
// carries the geometric endpoint distance at t and the configured capacity.
CapacityGraph build_topology(const ConstellationSpec& spec, EpochTime t,
                             const TopologyOptions& options = {});

// The four built-in shells (phase factor floor(N_P/2); the sources only
// give planes/sats/altitude/inclination).
std::vector<ConstellationSpec> builtin_presets();
// Lookup by case-insensitive name; throws ConfigError for unknown names.
ConstellationSpec preset_by_name(const std::string& name);

}  // namespace leocap
