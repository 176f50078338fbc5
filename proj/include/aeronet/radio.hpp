// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aeronet/antenna.hpp"
#include "aeronet/channel.hpp"
#include "aeronet/deployment.hpp"

namespace aeronet::radio {

// Immutable description of one deployment: geometry, sectorized cells, the
// shared BS antenna pattern and channel parameters. Safe to share read-only
// across parallel workers.
struct Scene {
  deployment::SiteLayout layout;
  std::vector<deployment::Cell> cells;
  antenna::CompositePattern pattern;
  channel::ChannelParams channel;

  Vec3 bs_pos(int cell_id) const {
    return layout.site_pos3(cells[static_cast<std::size_t>(cell_id)].site_id);
  }

  // BS position (possibly a wraparound mirror image) as seen from the UE.
  Vec3 bs_pos_toward(int cell_id, Vec3 ue_pos) const {
    const Vec3 bs = bs_pos(cell_id);
    if (!layout.wraparound) return bs;
    return ue_pos + deployment::wrap_displacement(ue_pos, bs, layout);
  }
};

// Per-cell RSRP with the descending order that defines N_k neighbors.
// The serving cell need not be the strongest.
struct MeasurementSet {
  std::vector<double> rsrp_dbm;  // indexed by cell_id
  std::vector<int> order;        // cell ids, strongest first; ties by lower id
  int serving_cell_id = -1;

  int strongest() const { return order.front(); }
  // k-th strongest neighbor relative to the serving cell (1-based).
  int neighbor(int k) const;
};

// RSRP for every cell at one UE position given per-cell link states.
std::vector<double> rsrp_all_dbm(const Scene& scene, Vec3 ue_pos,
                                 std::span<const channel::LinkState> links);

// Measure all cells; serving defaults to the strongest when negative.
MeasurementSet measure_all(const Scene& scene, Vec3 ue_pos,
                           std::span<const channel::LinkState> links,
                           int serving_cell_id = -1);

// N*S/RSSI in dB over n_prb_meas PRBs; RSSI sums all co-channel cells
// weighted by activity (serving forced to 1) plus noise.
double rsrq_db(const MeasurementSet& set, std::span<const double> activity,
               int n_prb_meas, double noise_per_re_dbm);

// Serving power over interference-plus-noise, per resource element.
double rs_sinr_db(const MeasurementSet& set, std::span<const double> activity,
                  double noise_per_re_dbm);

// Argmax of RSRP; ties break to the lowest cell_id.
int associate_max_power(const MeasurementSet& set);

enum class FadingMode {
  Off,      // median realization: zero shadow, LOS by probability >= 0.5
  Sampled,  // seeded per-point link states
};

struct GridSpec {
  double origin_x_m = 0.0;  // lower-left corner; points at origin + (i+0.5)*spacing
  double origin_y_m = 0.0;
  double spacing_m = 10.0;
  int nx = 0;
  int ny = 0;
  double height_m = 1.5;

  double x_at(int ix) const { return origin_x_m + (ix + 0.5) * spacing_m; }
  double y_at(int iy) const { return origin_y_m + (iy + 0.5) * spacing_m; }
};

// Maximum-received-power association over a raster, with per-point RS-SINR
// under all-cells-active interference.
struct AssociationMap {
  GridSpec grid;
  std::vector<int> serving_cell;   // row-major, iy*nx + ix
  std::vector<int> serving_site;
  std::vector<double> best_rsrp_dbm;
  std::vector<double> rs_sinr_db;
};

AssociationMap coverage_map(const Scene& scene, const GridSpec& grid, FadingMode mode,
                            std::uint64_t seed);

struct FragmentationStats {
  double non_nearest_fraction = 0.0;
  double mean_serving_distance_m = 0.0;
  int component_count = 0;
};

// non_nearest_fraction: share of points whose serving site is not the
// geometrically nearest; component_count: 4-connected same-site regions.
FragmentationStats fragmentation_stats(const AssociationMap& map,
                                       const deployment::SiteLayout& layout);

}  // namespace aeronet::radio
