// SPDX-License-Identifier: Apache-2.0
#include "aeronet/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aeronet/error.hpp"
#include "aeronet/parallel.hpp"

namespace aeronet::radio {

int MeasurementSet::neighbor(int k) const {
  int seen = 0;
  for (int cell : order) {
    if (cell == serving_cell_id) continue;
    ++seen;
    if (seen == k) return cell;
  }
  throw std::out_of_range("MeasurementSet::neighbor: fewer neighbors than requested");
}

std::vector<double> rsrp_all_dbm(const Scene& scene, Vec3 ue_pos,
                                 std::span<const channel::LinkState> links) {
  std::vector<double> rsrp(scene.cells.size());
  for (std::size_t c = 0; c < scene.cells.size(); ++c) {
    const Vec3 bs = scene.bs_pos_toward(static_cast<int>(c), ue_pos);
    rsrp[c] = channel::rx_power_per_re_dbm(scene.cells[c], bs, ue_pos, links[c],
                                           scene.pattern, scene.channel);
  }
  return rsrp;
}

MeasurementSet measure_all(const Scene& scene, Vec3 ue_pos,
                           std::span<const channel::LinkState> links,
                           int serving_cell_id) {
  if (scene.cells.empty()) throw ConfigError("measure_all: scene has no cells");

  MeasurementSet set;
  set.rsrp_dbm = rsrp_all_dbm(scene, ue_pos, links);
  set.order.resize(set.rsrp_dbm.size());
  std::iota(set.order.begin(), set.order.end(), 0);
  std::sort(set.order.begin(), set.order.end(), [&](int a, int b) {
    const double ra = set.rsrp_dbm[static_cast<std::size_t>(a)];
    const double rb = set.rsrp_dbm[static_cast<std::size_t>(b)];
    if (ra != rb) return ra > rb;
    return a < b;
  });
  set.serving_cell_id = serving_cell_id >= 0 ? serving_cell_id : set.order.front();
  return set;
}

namespace {

void check_activity(const MeasurementSet& set, std::span<const double> activity) {
  if (activity.size() != set.rsrp_dbm.size()) {
    throw ConfigError("activity: one entry per cell required");
  }
  for (double a : activity) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("activity: values must lie in [0,1]");
  }
  if (set.serving_cell_id < 0 ||
      static_cast<std::size_t>(set.serving_cell_id) >= set.rsrp_dbm.size()) {
    throw ConfigError("measurement set: serving cell not present");
  }
}

}  // namespace

double rsrq_db(const MeasurementSet& set, std::span<const double> activity,
               int n_prb_meas, double noise_per_re_dbm) {
  check_activity(set, activity);
  const double n = static_cast<double>(n_prb_meas);
  const double serving_lin = db_to_linear(set.rsrp_dbm[static_cast<std::size_t>(set.serving_cell_id)]);
  double rssi = 12.0 * n * db_to_linear(noise_per_re_dbm);
  for (std::size_t c = 0; c < set.rsrp_dbm.size(); ++c) {
    const double act = static_cast<int>(c) == set.serving_cell_id ? 1.0 : activity[c];
    rssi += 12.0 * n * db_to_linear(set.rsrp_dbm[c]) * act;
  }
  return linear_to_db(n * serving_lin / rssi);
}

double rs_sinr_db(const MeasurementSet& set, std::span<const double> activity,
                  double noise_per_re_dbm) {
  check_activity(set, activity);
  const double serving_lin = db_to_linear(set.rsrp_dbm[static_cast<std::size_t>(set.serving_cell_id)]);
  double denom = db_to_linear(noise_per_re_dbm);
  for (std::size_t c = 0; c < set.rsrp_dbm.size(); ++c) {
    if (static_cast<int>(c) == set.serving_cell_id) continue;
    denom += db_to_linear(set.rsrp_dbm[c]) * activity[c];
  }
  return linear_to_db(serving_lin / denom);
}

int associate_max_power(const MeasurementSet& set) {
  if (set.order.empty()) throw ConfigError("associate_max_power: empty measurement set");
  return set.order.front();
}

AssociationMap coverage_map(const Scene& scene, const GridSpec& grid, FadingMode mode,
                            std::uint64_t seed) {
  if (grid.nx <= 0 || grid.ny <= 0) throw ConfigError("map.grid: empty grid");
  if (scene.cells.empty()) throw ConfigError("coverage_map: scene has no cells");

  AssociationMap map;
  map.grid = grid;
  const std::size_t npoints = static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
  map.serving_cell.resize(npoints);
  map.serving_site.resize(npoints);
  map.best_rsrp_dbm.resize(npoints);
  map.rs_sinr_db.resize(npoints);

  const double noise = channel::noise_per_re_dbm(scene.channel);
  const std::vector<double> all_active(scene.cells.size(), 1.0);

  parallel_for(npoints, [&](std::size_t i) {
    const int ix = static_cast<int>(i) % grid.nx;
    const int iy = static_cast<int>(i) / grid.nx;
    const Vec3 pos{grid.x_at(ix), grid.y_at(iy), grid.height_m};

    std::vector<channel::LinkState> links(scene.cells.size());
    for (std::size_t c = 0; c < scene.cells.size(); ++c) {
      const Vec3 bs = scene.bs_pos_toward(static_cast<int>(c), pos);
      links[c] = mode == FadingMode::Off
                     ? channel::median_link_state(bs, pos, scene.channel)
                     : channel::sample_link_state(seed, static_cast<int>(c),
                                                  static_cast<int>(i), bs, pos,
                                                  scene.channel);
    }
    const MeasurementSet set = measure_all(scene, pos, links);
    const int best = associate_max_power(set);
    map.serving_cell[i] = best;
    map.serving_site[i] = scene.cells[static_cast<std::size_t>(best)].site_id;
    map.best_rsrp_dbm[i] = set.rsrp_dbm[static_cast<std::size_t>(best)];
    map.rs_sinr_db[i] = rs_sinr_db(set, all_active, noise);
  });
  return map;
}

FragmentationStats fragmentation_stats(const AssociationMap& map,
                                       const deployment::SiteLayout& layout) {
  FragmentationStats stats;
  const int nx = map.grid.nx;
  const int ny = map.grid.ny;
  const std::size_t npoints = map.serving_site.size();
  if (npoints == 0) return stats;

  std::size_t non_nearest = 0;
  double dist_sum = 0.0;
  for (std::size_t i = 0; i < npoints; ++i) {
    const int ix = static_cast<int>(i) % nx;
    const int iy = static_cast<int>(i) / nx;
    const Vec2 p{map.grid.x_at(ix), map.grid.y_at(iy)};

    int nearest = 0;
    double best_d2 = 1e300;
    for (int s = 0; s < layout.site_count(); ++s) {
      const Vec2 d = layout.site_positions[static_cast<std::size_t>(s)] - p;
      const double d2 = d.x * d.x + d.y * d.y;
      if (d2 < best_d2) {
        best_d2 = d2;
        nearest = s;
      }
    }
    if (map.serving_site[i] != nearest) ++non_nearest;
    const Vec2 ds = layout.site_positions[static_cast<std::size_t>(map.serving_site[i])] - p;
    dist_sum += norm(ds);
  }
  stats.non_nearest_fraction = static_cast<double>(non_nearest) / static_cast<double>(npoints);
  stats.mean_serving_distance_m = dist_sum / static_cast<double>(npoints);

  // Count 4-connected regions served by the same site.
  std::vector<char> visited(npoints, 0);
  std::vector<std::size_t> stack;
  int components = 0;
  for (std::size_t start = 0; start < npoints; ++start) {
    if (visited[start]) continue;
    ++components;
    visited[start] = 1;
    stack.push_back(start);
    const int site = map.serving_site[start];
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const int ix = static_cast<int>(i) % nx;
      const int iy = static_cast<int>(i) / nx;
      const int dx[4] = {1, -1, 0, 0};
      const int dy[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int jx = ix + dx[k];
        const int jy = iy + dy[k];
        if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
        const std::size_t j = static_cast<std::size_t>(jy) * static_cast<std::size_t>(nx) +
                              static_cast<std::size_t>(jx);
        if (visited[j] || map.serving_site[j] != site) continue;
        visited[j] = 1;
        stack.push_back(j);
      }
    }
  }
  stats.component_count = components;
  return stats;
}

}  // namespace aeronet::radio
