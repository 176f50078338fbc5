// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "aeronet/geometry.hpp"

namespace aeronet::deployment {

// Hexagonal multi-site deployment. Sites are ordered center first, then ring
// by ring counterclockwise from the +x axis; ring-1 sites sit at bearing
// 30 + k*60 degrees at exactly isd_m from the origin.
struct SiteLayout {
  double isd_m = 500.0;
  int rings = 2;
  double bs_height_m = 25.0;
  bool wraparound = false;
  std::vector<Vec2> site_positions;

  int site_count() const { return static_cast<int>(site_positions.size()); }
  Vec3 site_pos3(int site_id) const {
    const Vec2 p = site_positions[static_cast<std::size_t>(site_id)];
    return {p.x, p.y, bs_height_m};
  }
};

struct Cell {
  int cell_id = 0;
  int site_id = 0;
  int sector_index = 0;     // 0..2
  double bearing_deg = 0.0; // boresight azimuth in [0, 360)
  double tx_power_dbm = 46.0;
};

// Site count is 1 + 3*rings*(rings+1).
SiteLayout build_hex_layout(double isd_m, int rings, double bs_height_m);

// Three cells per site; cell_id = 3*site_id + sector_index.
std::vector<Cell> sectorize(const SiteLayout& layout,
                            const std::array<double, 3>& base_bearings_deg,
                            double tx_power_dbm);

// The 7 translation vectors (identity + 6 cluster shifts) used for
// wraparound mirror images of the deployment.
std::array<Vec2, 7> wrap_shift_vectors(const SiteLayout& layout);

// Displacement q - p, or the minimum-norm displacement over the 7 mirror
// images of q when the layout has wraparound enabled.
Vec3 wrap_displacement(Vec3 p, Vec3 q, const SiteLayout& layout);

}  // namespace aeronet::deployment
