// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "aeronet/antenna.hpp"
#include "aeronet/deployment.hpp"
#include "aeronet/geometry.hpp"

namespace aeronet::channel {

// Height-dependent LOS probability, dual-regime log-distance pathloss and
// shadow fading. All constants are configurable so alternative parameter
// sets can be dropped in.
struct ChannelParams {
  double fc_ghz = 2.0;
  double los_always_height_m = 100.0;  // at or above this height links are LOS
  double losprob_scale_m = 150.0;
  double pl_los_alpha_db = 28.0;
  double pl_los_beta = 22.0;
  double pl_nlos_alpha_db = 22.4;
  double pl_nlos_beta = 36.0;
  double sf_sigma0_db = 6.0;
  double sf_decay_per_m = 0.01;
  double sf_sigma_min_db = 2.0;
  double sf_decorrelation_m = 50.0;
  double noise_figure_db = 9.0;
  int system_prbs = 50;  // 10 MHz
};

struct LinkState {
  bool los = true;
  double shadow_db = 0.0;
};

// P(LOS). 1 when h_ut >= los_always_height_m, else a distance-stretched
// exponential that grows with height. Nondecreasing in h_ut, nonincreasing
// in d2d.
double los_probability(double d2d_m, double h_ut_m, const ChannelParams& p);

// alpha + beta*log10(d3d) + 20*log10(fc). Distances below 1 m clamp to 1 m.
double pathloss_db(double d3d_m, bool los, const ChannelParams& p);

// Shadow-fading std dev, decaying with height to a floor; NLOS links use
// 1.5x the LOS value.
double shadow_sigma_db(double h_ut_m, bool los, const ChannelParams& p);

// Deterministic in (seed, cell_id, ue_id): LOS ~ Bernoulli(los_probability),
// shadow ~ N(0, shadow_sigma).
LinkState sample_link_state(std::uint64_t seed, int cell_id, int ue_id, Vec3 bs_pos,
                            Vec3 ue_pos, const ChannelParams& p);

// LOS by expectation threshold 0.5, zero shadow (median realization).
LinkState median_link_state(Vec3 bs_pos, Vec3 ue_pos, const ChannelParams& p);

// Transmit power spread evenly over all resource elements of the system band.
double tx_power_per_re_dbm(double tx_power_dbm, int system_prbs);

// Thermal noise per resource element: -174 dBm/Hz + NF + 10*log10(15 kHz).
double noise_per_re_dbm(const ChannelParams& p);

// RSRP-style per-resource-element received power for one cell->UE link.
double rx_power_per_re_dbm(const deployment::Cell& cell, Vec3 bs_pos, Vec3 ue_pos,
                           const LinkState& link, const antenna::CompositePattern& pattern,
                           const ChannelParams& p);

}  // namespace aeronet::channel
