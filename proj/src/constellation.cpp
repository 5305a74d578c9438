#include "leocap/constellation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leocap/errors.hpp"

namespace leocap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

void ConstellationSpec::validate() const {
  if (n_planes < 1) throw std::invalid_argument("n_planes must be >= 1");
  if (sats_per_plane < 1) throw std::invalid_argument("sats_per_plane must be >= 1");
  if (phase_factor < 0 || phase_factor > n_planes - 1)
    throw std::invalid_argument("phase_factor must be in [0, n_planes - 1]");
  if (!(inclination_deg > 0.0 && inclination_deg < 180.0))
    throw std::invalid_argument("inclination_deg must be in (0, 180)");
  if (!(altitude_km > 0.0)) throw std::invalid_argument("altitude_km must be > 0");
}

SatelliteNode SatelliteNode::from_id(const ConstellationSpec& spec, int sat_id) {
  if (sat_id < 0 || sat_id >= spec.satellite_count())
    throw std::invalid_argument("sat_id out of range");
  return SatelliteNode{static_cast<std::int32_t>(sat_id),
                       static_cast<std::int32_t>(sat_id / spec.sats_per_plane),
                       static_cast<std::int32_t>(sat_id % spec.sats_per_plane)};
}

SatelliteNode SatelliteNode::from_plane_slot(const ConstellationSpec& spec, int plane,
                                             int slot) {
  if (plane < 0 || plane >= spec.n_planes) throw std::invalid_argument("plane out of range");
  if (slot < 0 || slot >= spec.sats_per_plane) throw std::invalid_argument("slot out of range");
  return SatelliteNode{static_cast<std::int32_t>(plane * spec.sats_per_plane + slot),
                       static_cast<std::int32_t>(plane), static_cast<std::int32_t>(slot)};
}

double phase_offset(const ConstellationSpec& spec, PhasingConvention convention) {
  spec.validate();
  if (spec.phase_factor == 0) return 0.0;
  if (convention == PhasingConvention::kClassicalWalker)
    return kTwoPi * spec.phase_factor /
           (static_cast<double>(spec.n_planes) * spec.sats_per_plane);
  if (spec.n_planes == 1) return 0.0;  // degenerate single-plane shell
  return kTwoPi * spec.phase_factor /
         (static_cast<double>(spec.sats_per_plane) * (spec.n_planes - 1));
}

double orbital_period_min(const ConstellationSpec& spec) {
  double a = kEarthRadiusKm + spec.altitude_km;
  return kTwoPi * std::sqrt(a * a * a / kMuKm3PerS2) / 60.0;
}

std::array<double, 3> eci_position(const ConstellationSpec& spec, const SatelliteNode& sat,
                                   EpochTime t, PhasingConvention convention) {
  spec.validate();
  if (sat.sat_id != sat.plane_idx * spec.sats_per_plane + sat.slot_idx ||
      sat.plane_idx < 0 || sat.plane_idx >= spec.n_planes || sat.slot_idx < 0 ||
      sat.slot_idx >= spec.sats_per_plane)
    throw std::invalid_argument("satellite does not belong to this constellation");

  const double radius = kEarthRadiusKm + spec.altitude_km;
  const double period_s = orbital_period_min(spec) * 60.0;
  const double raan = kTwoPi * sat.plane_idx / spec.n_planes;
  const double incl = spec.inclination_deg * std::numbers::pi / 180.0;
  const double arg_lat = kTwoPi * sat.slot_idx / spec.sats_per_plane +
                         sat.plane_idx * phase_offset(spec, convention) +
                         kTwoPi * t.seconds / period_s;

  const double cu = std::cos(arg_lat), su = std::sin(arg_lat);
  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(incl), si = std::sin(incl);
  return {radius * (co * cu - so * su * ci), radius * (so * cu + co * su * ci),
          radius * (su * si)};
}

OrbitalState propagate(const ConstellationSpec& spec, const SatelliteNode& sat, EpochTime t,
                       PhasingConvention convention) {
  std::array<double, 3> eci = eci_position(spec, sat, t, convention);
  const double theta = kEarthRotationRadPerS * t.seconds;
  const double c = std::cos(theta), s = std::sin(theta);
  // ECEF = Rz(-theta) * ECI.
  OrbitalState state;
  state.position_ecef_km = {c * eci[0] + s * eci[1], -s * eci[0] + c * eci[1], eci[2]};
  state.orbital_period_min = orbital_period_min(spec);
  return state;
}

CapacityGraph build_topology(const ConstellationSpec& spec, EpochTime t,
                             const TopologyOptions& options) {
  spec.validate();
  const int planes = spec.n_planes;
  const int slots = spec.sats_per_plane;

  std::vector<std::array<double, 3>> pos(static_cast<std::size_t>(spec.satellite_count()));
  for (int id = 0; id < spec.satellite_count(); ++id)
    pos[static_cast<std::size_t>(id)] =
        eci_position(spec, SatelliteNode::from_id(spec, id), t, options.phasing);

  CapacityGraph g(spec.satellite_count());
  auto link = [&](int a, int b) {
    g.add_isl(a, b, options.isl_capacity_gbps,
              distance(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]));
  };

  // Intra-plane ring: slot s to slot s+1 (mod M_P). M_P == 2 is a single
  // link, not two.
  for (int p = 0; p < planes; ++p) {
    if (slots < 2) break;
    int ring_links = (slots == 2) ? 1 : slots;
    for (int s = 0; s < ring_links; ++s) {
      int a = SatelliteNode::from_plane_slot(spec, p, s).sat_id;
      int b = SatelliteNode::from_plane_slot(spec, p, (s + 1) % slots).sat_id;
      link(a, b);
    }
  }
  // Inter-plane: same slot in plane p and p+1 (mod N_P); the p = N_P-1 wrap
  // is the cross-seam set.
  if (planes >= 2) {
    int plane_links = (planes == 2) ? 1 : (options.cross_seam ? planes : planes - 1);
    for (int p = 0; p < plane_links; ++p) {
      for (int s = 0; s < slots; ++s) {
        int a = SatelliteNode::from_plane_slot(spec, p, s).sat_id;
        int b = SatelliteNode::from_plane_slot(spec, (p + 1) % planes, s).sat_id;
        link(a, b);
      }
    }
  }
  return g;
}

std::vector<ConstellationSpec> builtin_presets() {
  return {
      ConstellationSpec{"kuiper", 17, 34, 8, 51.9, 630.0},
      ConstellationSpec{"oneweb", 12, 49, 6, 87.9, 1200.0},
      ConstellationSpec{"telesat", 40, 33, 20, 50.9, 1325.0},
      ConstellationSpec{"starlink", 22, 72, 11, 53.0, 550.0},
  };
}

ConstellationSpec preset_by_name(const std::string& name) {
  std::string key = lower(name);
  for (const ConstellationSpec& spec : builtin_presets())
    if (spec.name == key) return spec;
  throw ConfigError("unknown constellation preset: " + name);
}

}  // namespace leocap
