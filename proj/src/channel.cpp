// SPDX-License-Identifier: Apache-2.0
#include "aeronet/channel.hpp"

#include <algorithm>
#include <cmath>

#include "aeronet/rng.hpp"

namespace aeronet::channel {

double los_probability(double d2d_m, double h_ut_m, const ChannelParams& p) {
  if (h_ut_m >= p.los_always_height_m) return 1.0;
  const double g = 1.0 + h_ut_m / p.los_always_height_m;
  const double scale = p.losprob_scale_m * g;
  return std::min(1.0, std::exp(-std::max(0.0, d2d_m - scale) / scale));
}

double pathloss_db(double d3d_m, bool los, const ChannelParams& p) {
  const double d = std::max(d3d_m, 1.0);
  const double alpha = los ? p.pl_los_alpha_db : p.pl_nlos_alpha_db;
  const double beta = los ? p.pl_los_beta : p.pl_nlos_beta;
  return alpha + beta * std::log10(d) + 20.0 * std::log10(p.fc_ghz);
}

double shadow_sigma_db(double h_ut_m, bool los, const ChannelParams& p) {
  const double sigma_los =
      std::max(p.sf_sigma_min_db, p.sf_sigma0_db * std::exp(-p.sf_decay_per_m * h_ut_m));
  return los ? sigma_los : 1.5 * sigma_los;
}

LinkState sample_link_state(std::uint64_t seed, int cell_id, int ue_id, Vec3 bs_pos,
                            Vec3 ue_pos, const ChannelParams& p) {
  const Vec3 d = ue_pos - bs_pos;
  const double d2d = std::hypot(d.x, d.y);
  const double p_los = los_probability(d2d, ue_pos.z, p);

  auto los_stream = rng::derive_stream(seed, rng::Purpose::LinkLos,
                                       static_cast<std::uint64_t>(cell_id),
                                       static_cast<std::uint64_t>(ue_id));
  const bool los = los_stream.uniform() < p_los;

  auto shadow_stream = rng::derive_stream(seed, rng::Purpose::LinkShadow,
                                          static_cast<std::uint64_t>(cell_id),
                                          static_cast<std::uint64_t>(ue_id));
  const double sigma = shadow_sigma_db(ue_pos.z, los, p);
  return {los, sigma * shadow_stream.gaussian()};
}

LinkState median_link_state(Vec3 bs_pos, Vec3 ue_pos, const ChannelParams& p) {
  const Vec3 d = ue_pos - bs_pos;
  const double d2d = std::hypot(d.x, d.y);
  return {los_probability(d2d, ue_pos.z, p) >= 0.5, 0.0};
}

double tx_power_per_re_dbm(double tx_power_dbm, int system_prbs) {
  return tx_power_dbm - 10.0 * std::log10(12.0 * system_prbs);
}

double noise_per_re_dbm(const ChannelParams& p) {
  return -174.0 + p.noise_figure_db + 10.0 * std::log10(15000.0);
}

double rx_power_per_re_dbm(const deployment::Cell& cell, Vec3 bs_pos, Vec3 ue_pos,
                           const LinkState& link, const antenna::CompositePattern& pattern,
                           const ChannelParams& p) {
  const auto angles = antenna::link_angles(cell.bearing_deg, bs_pos, ue_pos);
  const double gain = antenna::composite_gain_db(angles.az_rel_deg, angles.el_rel_deg, pattern);
  const double d3d = norm(ue_pos - bs_pos);
  return tx_power_per_re_dbm(cell.tx_power_dbm, p.system_prbs) + gain -
         pathloss_db(d3d, link.los, p) - link.shadow_db;
}

}  // namespace aeronet::channel
