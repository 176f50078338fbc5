// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aeronet/radio.hpp"

namespace aeronet::latency {

// Periodic command-and-control traffic: one packet per period per UE.
struct TrafficConfig {
  double period_ms = 100.0;  // +inf disables traffic
  int packet_bytes = 1250;
  double latency_bound_ms = 50.0;
};

// Attenuated-Shannon link adaptation, no HARQ.
struct LinkAdaptation {
  double efficiency_scale = 0.75;
  double efficiency_cap_bps_hz = 4.8;
  double min_sinr_db = -10.0;  // below this the grant carries no bits
};

struct LatencyScenario {
  double ue_height_m = 1.5;
  int ues_per_cell = 5;
  int prb_pool = 6;            // PRBs dedicated to drone traffic
  double sim_duration_ms = 60000.0;
  std::uint64_t seed = 1;
  TrafficConfig traffic;
  LinkAdaptation link_adaptation;
  double min_drop_radius_m = 35.0;
  double drop_margin_db = 3.0;  // cell must be within this of the strongest
};

struct UePlacement {
  int ue_id = 0;
  int cell_id = 0;
  Vec3 pos;
};

// 5 UEs (by default) uniformly in each cell's ground-projected sector wedge
// at the scenario height; serving binding is the drop cell.
std::vector<UePlacement> drop_ues(const radio::Scene& scene, const LatencyScenario& scn);

// Spectral efficiency in bits/s/Hz for a PDSCH SINR.
double link_adaptation_eff(double sinr_db, const LinkAdaptation& la);

struct Packet {
  int ue_idx = 0;         // index into placements
  double arrival_ms = 0.0;
  double bits_left = 0.0;
  std::size_t sample_idx = 0;
};

// FIFO queue of one cell across its UEs; head advances as packets finish.
struct CellQueue {
  std::vector<Packet> packets;  // sorted by (arrival, ue)
  std::size_t head = 0;
};

struct Grant {
  int ue_idx;
  std::size_t packet_index;
};

// Full-pool FIFO grant: the oldest queued packet that has arrived by now_ms,
// or none when the queue is empty.
std::optional<Grant> schedule_tti(const CellQueue& queue, double now_ms);

struct LatencySample {
  int ue_id;
  int cell_id;
  double arrival_ms;
  double latency_ms;  // +inf when undelivered at sim end
};

struct SinrSample {
  double t_ms;
  int cell_id;
  int ue_id;
  double sinr_db;
};

struct LatencyResult {
  std::vector<LatencySample> samples;
  std::vector<SinrSample> sinr_samples;      // one per granted cell-TTI
  double utilization = 0.0;                  // granted cell-TTIs / (cells * TTIs)
  std::vector<double> per_cell_utilization;
  std::int64_t offered_packets = 0;
  std::int64_t delivered_packets = 0;
  double granted_capacity_bits = 0.0;        // sum of eff*prbs*180 over grants
};

// TTI-level downlink simulation with same-TTI interference coupling.
LatencyResult run_latency_sim(const radio::Scene& scene, const LatencyScenario& scn);

struct CdfSummary {
  double fraction_within_bound = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
};

// Infinity sentinels count as exceeding any bound; nearest-rank percentiles.
CdfSummary latency_cdf(const LatencyResult& result, double bound_ms);

}  // namespace aeronet::latency
