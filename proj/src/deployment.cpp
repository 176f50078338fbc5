// SPDX-License-Identifier: Apache-2.0
#include "aeronet/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "aeronet/error.hpp"

namespace aeronet::deployment {

namespace {

// Lattice basis chosen so ring-1 sites land on bearings 30 + k*60 deg.
Vec2 basis_u(double isd_m) {
  return {isd_m * std::cos(deg_to_rad(30.0)), isd_m * std::sin(deg_to_rad(30.0))};
}

Vec2 basis_v(double isd_m) { return {0.0, isd_m}; }

double ccw_angle(Vec2 p) {
  double a = std::atan2(p.y, p.x);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

Vec2 rotate(Vec2 p, double angle_rad) {
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

}  // namespace

SiteLayout build_hex_layout(double isd_m, int rings, double bs_height_m) {
  if (!(isd_m > 0.0)) throw ConfigError("layout.isd_m: must be > 0");
  if (rings < 0) throw ConfigError("layout.rings: must be >= 0");

  SiteLayout layout;
  layout.isd_m = isd_m;
  layout.rings = rings;
  layout.bs_height_m = bs_height_m;
  layout.site_positions.push_back({0.0, 0.0});

  const Vec2 u = basis_u(isd_m);
  const Vec2 v = basis_v(isd_m);
  for (int ring = 1; ring <= rings; ++ring) {
    std::vector<Vec2> ring_sites;
    for (int q = -ring; q <= ring; ++q) {
      for (int r = -ring; r <= ring; ++r) {
        const int hex_dist = (std::abs(q) + std::abs(r) + std::abs(q + r)) / 2;
        if (hex_dist != ring) continue;
        ring_sites.push_back(static_cast<double>(q) * u + static_cast<double>(r) * v);
      }
    }
    std::sort(ring_sites.begin(), ring_sites.end(),
              [](Vec2 a, Vec2 b) { return ccw_angle(a) < ccw_angle(b); });
    layout.site_positions.insert(layout.site_positions.end(), ring_sites.begin(),
                                 ring_sites.end());
  }
  return layout;
}

std::vector<Cell> sectorize(const SiteLayout& layout,
                            const std::array<double, 3>& base_bearings_deg,
                            double tx_power_dbm) {
  std::array<double, 3> bearings{};
  for (std::size_t i = 0; i < 3; ++i) bearings[i] = wrap_deg_360(base_bearings_deg[i]);
  if (bearings[0] == bearings[1] || bearings[0] == bearings[2] ||
      bearings[1] == bearings[2]) {
    throw ConfigError("layout.bearings_deg: sector bearings must be distinct");
  }

  std::vector<Cell> cells;
  cells.reserve(3 * layout.site_positions.size());
  for (int site = 0; site < layout.site_count(); ++site) {
    for (int k = 0; k < 3; ++k) {
      cells.push_back({3 * site + k, site, k, bearings[static_cast<std::size_t>(k)],
                       tx_power_dbm});
    }
  }
  return cells;
}

std::array<Vec2, 7> wrap_shift_vectors(const SiteLayout& layout) {
  // Cluster translation for 1+3r(r+1) sites: (r+1)*u + r*v and its 60-degree
  // rotations tile the plane with copies of the deployment.
  const Vec2 u = basis_u(layout.isd_m);
  const Vec2 v = basis_v(layout.isd_m);
  const Vec2 t = static_cast<double>(layout.rings + 1) * u +
                 static_cast<double>(layout.rings) * v;
  std::array<Vec2, 7> shifts{};
  shifts[0] = {0.0, 0.0};
  for (int k = 0; k < 6; ++k) {
    shifts[static_cast<std::size_t>(k + 1)] = rotate(t, deg_to_rad(60.0 * k));
  }
  return shifts;
}

Vec3 wrap_displacement(Vec3 p, Vec3 q, const SiteLayout& layout) {
  const Vec3 direct = q - p;
  if (!layout.wraparound) return direct;

  const auto shifts = wrap_shift_vectors(layout);
  Vec3 best = direct;
  double best_norm2 = direct.x * direct.x + direct.y * direct.y;
  for (std::size_t i = 1; i < shifts.size(); ++i) {
    const double dx = direct.x + shifts[i].x;
    const double dy = direct.y + shifts[i].y;
    const double n2 = dx * dx + dy * dy;
    if (n2 < best_norm2) {
      best_norm2 = n2;
      best = {dx, dy, direct.z};
    }
  }
  return best;
}

}  // namespace aeronet::deployment
