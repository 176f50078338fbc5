// SPDX-License-Identifier: Apache-2.0
#include "aeronet/latency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aeronet/error.hpp"
#include "aeronet/parallel.hpp"
#include "aeronet/rng.hpp"
#include "aeronet/stats.hpp"

namespace aeronet::latency {

std::vector<UePlacement> drop_ues(const radio::Scene& scene, const LatencyScenario& scn) {
  if (scene.cells.empty()) throw ConfigError("latency: scene has no cells");
  if (scn.ues_per_cell < 0) throw ConfigError("latency.ues_per_cell: must be >= 0");

  // Sector wedge of the site's coverage disc; three sectors tile the disc.
  const double r_max = scene.layout.isd_m / std::sqrt(3.0);
  const double r_min = scn.min_drop_radius_m;
  if (!(r_min >= 0.0 && r_min < r_max)) {
    throw ConfigError("latency.min_drop_radius_m: must lie in [0, isd/sqrt(3))");
  }

  // A drop position must lie where the cell actually serves the UE given the
  // realized channel: candidates are rejection-sampled until the cell's RSRP
  // under the UE's own sampled link states is within the attach margin of the
  // strongest cell there (cell selection with margin). The same seeded link
  // states drive the simulation afterwards. Positions where no candidate
  // qualifies fall back to the candidate with the strongest own-cell RSRP.
  const int max_tries = 100;
  const auto realized_rsrp = [&](const deployment::Cell& cell, int ue_id, Vec3 pos) {
    const Vec3 bs = scene.bs_pos_toward(cell.cell_id, pos);
    const auto link = channel::sample_link_state(scn.seed, cell.cell_id, ue_id, bs, pos,
                                                 scene.channel);
    return channel::rx_power_per_re_dbm(cell, bs, pos, link, scene.pattern, scene.channel);
  };
  const auto attachable = [&](const deployment::Cell& cell, int ue_id, Vec3 pos) {
    const double own = realized_rsrp(cell, ue_id, pos);
    for (const auto& other : scene.cells) {
      if (other.cell_id == cell.cell_id) continue;
      if (realized_rsrp(other, ue_id, pos) > own + scn.drop_margin_db) return false;
    }
    return true;
  };

  std::vector<UePlacement> ues;
  ues.reserve(scene.cells.size() * static_cast<std::size_t>(scn.ues_per_cell));
  for (const auto& cell : scene.cells) {
    const Vec3 site = scene.layout.site_pos3(cell.site_id);
    for (int k = 0; k < scn.ues_per_cell; ++k) {
      const int ue_id = cell.cell_id * scn.ues_per_cell + k;
      auto stream = rng::derive_stream(scn.seed, rng::Purpose::UeDrop,
                                       static_cast<std::uint64_t>(cell.cell_id),
                                       static_cast<std::uint64_t>(k));
      Vec3 pos{};
      Vec3 fallback{};
      double fallback_rsrp = -1e300;
      bool placed = false;
      for (int attempt = 0; attempt < max_tries; ++attempt) {
        // Area-uniform radius in [r_min, r_max], azimuth within +-60 deg.
        const double r = std::sqrt(r_min * r_min +
                                   stream.uniform() * (r_max * r_max - r_min * r_min));
        const double az = deg_to_rad(cell.bearing_deg + stream.uniform(-60.0, 60.0));
        pos = {site.x + r * std::cos(az), site.y + r * std::sin(az), scn.ue_height_m};
        if (attachable(cell, ue_id, pos)) {
          placed = true;
          break;
        }
        const double rsrp = realized_rsrp(cell, ue_id, pos);
        if (rsrp > fallback_rsrp) {
          fallback_rsrp = rsrp;
          fallback = pos;
        }
      }
      if (!placed) pos = fallback;
      ues.push_back({ue_id, cell.cell_id, pos});
    }
  }
  return ues;
}

double link_adaptation_eff(double sinr_db, const LinkAdaptation& la) {
  if (sinr_db < la.min_sinr_db) return 0.0;
  const double eff = la.efficiency_scale * std::log2(1.0 + db_to_linear(sinr_db));
  return std::min(eff, la.efficiency_cap_bps_hz);
}

std::optional<Grant> schedule_tti(const CellQueue& queue, double now_ms) {
  if (queue.head >= queue.packets.size()) return std::nullopt;
  const Packet& pkt = queue.packets[queue.head];
  if (pkt.arrival_ms > now_ms) return std::nullopt;
  return Grant{pkt.ue_idx, queue.head};
}

LatencyResult run_latency_sim(const radio::Scene& scene, const LatencyScenario& scn) {
  const int nc = static_cast<int>(scene.cells.size());
  if (nc == 0) throw ConfigError("latency: scene has no cells");
  if (scn.prb_pool < 1 || scn.prb_pool > scene.channel.system_prbs) {
    throw ConfigError("latency.prb_pool: must lie in [1, system_prbs]");
  }
  const double period = scn.traffic.period_ms;
  const bool has_traffic = std::isfinite(period);
  if (has_traffic && !(period > 0.0)) throw ConfigError("latency.period_ms: must be > 0");
  if (has_traffic && scn.sim_duration_ms < 10.0 * period) {
    throw ConfigError("latency.duration_ms: must cover at least 10 traffic periods");
  }

  const auto ues = drop_ues(scene, scn);
  const int nu = static_cast<int>(ues.size());

  // Frozen per-link received powers (no fast fading in latency runs).
  std::vector<double> p_lin(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nc));
  parallel_for(static_cast<std::size_t>(nu), [&](std::size_t u) {
    for (int c = 0; c < nc; ++c) {
      const Vec3 bs = scene.bs_pos_toward(c, ues[u].pos);
      const auto link = channel::sample_link_state(scn.seed, c, ues[u].ue_id, bs,
                                                   ues[u].pos, scene.channel);
      const double rsrp = channel::rx_power_per_re_dbm(
          scene.cells[static_cast<std::size_t>(c)], bs, ues[u].pos, link, scene.pattern,
          scene.channel);
      p_lin[u * static_cast<std::size_t>(nc) + static_cast<std::size_t>(c)] =
          db_to_linear(rsrp);
    }
  });
  const double noise_lin = db_to_linear(channel::noise_per_re_dbm(scene.channel));

  LatencyResult result;
  const double packet_bits = 8.0 * scn.traffic.packet_bytes;
  const auto duration = static_cast<std::int64_t>(std::llround(scn.sim_duration_ms));

  // Generate all arrivals; integer-ms phase per UE.
  std::vector<CellQueue> queues(static_cast<std::size_t>(nc));
  if (has_traffic) {
    for (int u = 0; u < nu; ++u) {
      const int cell = ues[static_cast<std::size_t>(u)].cell_id;
      const int local = ues[static_cast<std::size_t>(u)].ue_id -
                        cell * scn.ues_per_cell;
      auto stream = rng::derive_stream(scn.seed, rng::Purpose::TrafficPhase,
                                       static_cast<std::uint64_t>(cell),
                                       static_cast<std::uint64_t>(local));
      const double phase = std::floor(stream.uniform() * period);
      for (double t = phase; t < static_cast<double>(duration); t += period) {
        queues[static_cast<std::size_t>(cell)].packets.push_back(
            {u, t, packet_bits, 0});
      }
    }
  }
  for (int c = 0; c < nc; ++c) {
    auto& q = queues[static_cast<std::size_t>(c)].packets;
    std::sort(q.begin(), q.end(), [](const Packet& a, const Packet& b) {
      if (a.arrival_ms != b.arrival_ms) return a.arrival_ms < b.arrival_ms;
      return a.ue_idx < b.ue_idx;
    });
    for (auto& pkt : q) {
      pkt.sample_idx = result.samples.size();
      result.samples.push_back({ues[static_cast<std::size_t>(pkt.ue_idx)].ue_id, c,
                                pkt.arrival_ms,
                                std::numeric_limits<double>::infinity()});
    }
  }
  result.offered_packets = static_cast<std::int64_t>(result.samples.size());

  std::vector<int> active;
  std::vector<std::int64_t> granted_per_cell(static_cast<std::size_t>(nc), 0);
  std::int64_t granted_total = 0;
  const double pool_hz_ms = scn.prb_pool * 180.0;  // bits per TTI at 1 bps/Hz

  for (std::int64_t t = 0; t < duration; ++t) {
    const double now = static_cast<double>(t);
    active.clear();
    for (int c = 0; c < nc; ++c) {
      if (schedule_tti(queues[static_cast<std::size_t>(c)], now)) active.push_back(c);
    }
    granted_total += static_cast<std::int64_t>(active.size());

    for (int c : active) {
      auto& queue = queues[static_cast<std::size_t>(c)];
      Packet& pkt = queue.packets[queue.head];
      const std::size_t row = static_cast<std::size_t>(pkt.ue_idx) * static_cast<std::size_t>(nc);
      const double signal = p_lin[row + static_cast<std::size_t>(c)];
      double interference = 0.0;
      for (int c2 : active) {
        if (c2 != c) interference += p_lin[row + static_cast<std::size_t>(c2)];
      }
      const double sinr_db = linear_to_db(signal / (interference + noise_lin));
      const double eff = link_adaptation_eff(sinr_db, scn.link_adaptation);
      const double bits = eff * pool_hz_ms;
      result.granted_capacity_bits += bits;
      result.sinr_samples.push_back({now, c, ues[static_cast<std::size_t>(pkt.ue_idx)].ue_id,
                                     sinr_db});
      ++granted_per_cell[static_cast<std::size_t>(c)];
      pkt.bits_left -= bits;
      if (pkt.bits_left <= 0.0) {
        result.samples[pkt.sample_idx].latency_ms = static_cast<double>(t + 1) - pkt.arrival_ms;
        ++result.delivered_packets;
        ++queue.head;
      }
    }
  }

  const double cell_ttis = static_cast<double>(nc) * static_cast<double>(duration);
  result.utilization = cell_ttis > 0.0 ? static_cast<double>(granted_total) / cell_ttis : 0.0;
  result.per_cell_utilization.resize(static_cast<std::size_t>(nc));
  for (int c = 0; c < nc; ++c) {
    result.per_cell_utilization[static_cast<std::size_t>(c)] =
        duration > 0 ? static_cast<double>(granted_per_cell[static_cast<std::size_t>(c)]) /
                           static_cast<double>(duration)
                     : 0.0;
  }
  return result;
}

CdfSummary latency_cdf(const LatencyResult& result, double bound_ms) {
  if (result.samples.empty()) throw ConfigError("latency_cdf: no samples");
  std::vector<double> lat;
  lat.reserve(result.samples.size());
  std::size_t within = 0;
  for (const auto& s : result.samples) {
    lat.push_back(s.latency_ms);
    if (s.latency_ms <= bound_ms) ++within;
  }
  CdfSummary out;
  out.fraction_within_bound = static_cast<double>(within) / static_cast<double>(lat.size());
  out.p50_ms = stats::percentile(lat, 50.0);
  out.p95_ms = stats::percentile(lat, 95.0);
  return out;
}

}  // namespace aeronet::latency
