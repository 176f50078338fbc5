// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "aeronet/latency.hpp"
#include "aeronet/mobility.hpp"
#include "aeronet/radio.hpp"

namespace aeronet::config {

struct LayoutConfig {
  double isd_m = 500.0;
  int rings = 2;
  double bs_height_m = 25.0;
  bool wraparound = false;
  std::array<double, 3> bearings_deg{0.0, 120.0, 240.0};
  double tx_power_dbm = 46.0;
};

struct MapExperiment {
  std::vector<double> heights_m{1.5};
  double extent_m = 2000.0;   // square window centered on the origin
  double spacing_m = 10.0;
  radio::FadingMode fading = radio::FadingMode::Off;
  bool center_only = false;
};

struct LatencyExperiment {
  std::vector<double> heights_m{1.5};
  int prb_pool = 6;
  double duration_ms = 60000.0;
  int ues_per_cell = 5;
  double period_ms = 100.0;
  int packet_bytes = 1250;
  double latency_bound_ms = 50.0;
  latency::LinkAdaptation link_adaptation;
  double min_drop_radius_m = 35.0;
  bool center_only = false;
};

struct RouteSpec {
  enum class Type { Waypoints, RandomStraight };
  Type type = Type::Waypoints;
  std::vector<Vec2> waypoints;     // Waypoints type
  int count = 1;                   // RandomStraight type
  double length_m = 2000.0;
  double midpoint_radius_m = 300.0;
};

struct MobilityExperiment {
  std::vector<double> heights_m{300.0};
  double speed_kmh = 30.0;
  double sample_dt_ms = 100.0;
  RouteSpec routes;
  mobility::HandoverConfig handover;
  mobility::RlfConfig rlf;
  double interference_activity = 1.0;
  int trace_route = 0;
};

using Experiment = std::variant<MapExperiment, LatencyExperiment, MobilityExperiment>;

// One fully resolved experiment: deployment + antenna + channel + exactly one
// experiment block.
struct Scenario {
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  LayoutConfig layout;
  antenna::CompositePattern antenna;
  channel::ChannelParams channel;
  Experiment experiment;
};

// Parses and validates a scenario. Unknown keys, out-of-range values and a
// missing experiment block raise ConfigError with the offending key path.
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::filesystem::path& path);

// Canonical JSON with all defaults materialized; load(serialize(s)) == s.
std::string serialize(const Scenario& scenario);

radio::Scene build_scene(const Scenario& scenario);

// Routes for one mobility run at the given height. Random-straight routes
// depend only on (seed, route index), so different heights share ground tracks.
std::vector<mobility::Trajectory> build_routes(const Scenario& scenario,
                                               const MobilityExperiment& mob,
                                               double height_m);

}  // namespace aeronet::config
