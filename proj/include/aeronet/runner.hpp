// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aeronet/scenario.hpp"

namespace aeronet::config {

struct MapRow {
  double height_m;
  double non_nearest_fraction;
  double mean_serving_distance_m;
  int component_count;
  double median_rsrp_dbm;
  double median_rs_sinr_db;
};

struct LatencyRow {
  double height_m;
  int prbs;
  double utilization;
  double frac_within_bound;
  double p50_ms;
  double p95_ms;
};

struct MobilityRow {
  double height_m;
  int routes;
  int handovers;
  int rlfs;
  double rlf_per_km;
};

// Summary rows of the experiment that ran, in output order.
struct RunReport {
  std::vector<MapRow> map_rows;
  std::vector<LatencyRow> latency_rows;
  std::vector<MobilityRow> mobility_rows;
};

// Dispatches the scenario's experiment, writes every output file under
// scenario.out_dir and prints one summary line per run to `log`.
RunReport run_scenario(const Scenario& scenario, std::ostream& log);

// `pattern-dump` output: composite gain on a 1-degree grid.
void write_pattern_dump(const Scenario& scenario, std::ostream& log);

}  // namespace aeronet::config
