// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "aeronet/error.hpp"
#include "aeronet/latency.hpp"

using namespace aeronet;
using namespace aeronet::latency;

namespace {

radio::Scene make_scene(int rings) {
  radio::Scene scene;
  scene.layout = deployment::build_hex_layout(500.0, rings, 25.0);
  scene.cells = deployment::sectorize(scene.layout, {0.0, 120.0, 240.0}, 46.0);
  return scene;
}

// One isolated cell; shadowing disabled so link budgets are pure geometry.
radio::Scene make_single_cell_scene() {
  radio::Scene scene = make_scene(0);
  scene.cells.resize(1);
  scene.channel.sf_sigma0_db = 0.0;
  scene.channel.sf_sigma_min_db = 0.0;
  return scene;
}

}  // namespace

TEST_CASE("drop_ues counts and determinism") {
  const radio::Scene scene = make_scene(2);
  LatencyScenario scn;
  scn.ue_height_m = 30.0;
  scn.seed = 5;
  const auto ues = drop_ues(scene, scn);
  CHECK(ues.size() == 285);  // 57 cells x 5 UEs

  const auto again = drop_ues(scene, scn);
  for (std::size_t i = 0; i < ues.size(); ++i) {
    CHECK(ues[i].pos.x == again[i].pos.x);
    CHECK(ues[i].pos.y == again[i].pos.y);
  }
}

TEST_CASE("drop_ues places UEs inside the sector wedge") {
  radio::Scene scene = make_scene(0);
  scene.cells.resize(1);
  LatencyScenario scn;
  scn.ue_height_m = 1.5;
  const auto ues = drop_ues(scene, scn);
  REQUIRE(ues.size() == 5);
  const double r_max = 500.0 / std::sqrt(3.0);
  for (const auto& ue : ues) {
    const double r = std::hypot(ue.pos.x, ue.pos.y);
    CHECK(r >= scn.min_drop_radius_m);
    CHECK(r <= r_max);
    const double az = wrap_deg_pm180(rad_to_deg(std::atan2(ue.pos.y, ue.pos.x)) - 0.0);
    CHECK(std::abs(az) <= 60.0);
    CHECK(ue.pos.z == 1.5);
  }
}

TEST_CASE("link adaptation curve") {
  LinkAdaptation la;
  CHECK(link_adaptation_eff(0.0, la) == doctest::Approx(0.75));
  CHECK(link_adaptation_eff(60.0, la) == doctest::Approx(4.8));
  CHECK(link_adaptation_eff(-15.0, la) == 0.0);
  CHECK(link_adaptation_eff(-10.0, la) > 0.0);  // boundary included
}

TEST_CASE("schedule_tti is FIFO with full-pool grants") {
  CellQueue queue;
  CHECK(!schedule_tti(queue, 0.0));

  queue.packets.push_back({3, 5.0, 10000.0, 0});
  queue.packets.push_back({1, 7.0, 10000.0, 1});
  CHECK(!schedule_tti(queue, 4.0));  // nothing has arrived yet
  auto grant = schedule_tti(queue, 5.0);
  REQUIRE(grant);
  CHECK(grant->ue_idx == 3);  // 5 ms arrival served before 7 ms

  queue.head = 1;
  grant = schedule_tti(queue, 10.0);
  REQUIRE(grant);
  CHECK(grant->ue_idx == 1);
}

TEST_CASE("single isolated cell at high SINR delivers every packet in 1 ms") {
  const radio::Scene scene = make_single_cell_scene();
  LatencyScenario scn;
  scn.ue_height_m = 1.5;
  scn.ues_per_cell = 1;
  scn.prb_pool = 15;
  scn.sim_duration_ms = 2000.0;
  scn.seed = 3;
  const auto result = run_latency_sim(scene, scn);

  // eff caps at 4.8 -> 12960 bits per TTI >= 10000-bit packets.
  REQUIRE(result.offered_packets == 20);
  CHECK(result.delivered_packets == 20);
  for (const auto& s : result.samples) CHECK(s.latency_ms == 1.0);
  CHECK(result.utilization == doctest::Approx(0.01).epsilon(1e-9));

  const auto cdf = latency_cdf(result, 50.0);
  CHECK(cdf.fraction_within_bound == 1.0);
  CHECK(cdf.p50_ms == 1.0);
}

TEST_CASE("zero traffic produces no samples and zero utilization") {
  const radio::Scene scene = make_single_cell_scene();
  LatencyScenario scn;
  scn.traffic.period_ms = std::numeric_limits<double>::infinity();
  scn.sim_duration_ms = 1000.0;
  const auto result = run_latency_sim(scene, scn);
  CHECK(result.samples.empty());
  CHECK(result.utilization == 0.0);
  CHECK_THROWS_AS(latency_cdf(result, 50.0), ConfigError);
}

TEST_CASE("pinned efficiency gives ceil(10000/2025) = 5 TTIs") {
  const radio::Scene scene = make_single_cell_scene();
  LatencyScenario scn;
  scn.ue_height_m = 1.5;
  scn.ues_per_cell = 1;
  scn.prb_pool = 15;
  scn.sim_duration_ms = 2000.0;
  scn.seed = 3;
  scn.link_adaptation.efficiency_cap_bps_hz = 0.75;  // pin eff at the cap
  const auto result = run_latency_sim(scene, scn);
  REQUIRE(!result.samples.empty());
  for (const auto& s : result.samples) CHECK(s.latency_ms == 5.0);
}

TEST_CASE("latency cdf counts infinity against any bound") {
  LatencyResult result;
  result.samples = {{0, 0, 0.0, 10.0},
                    {1, 0, 0.0, 60.0},
                    {2, 0, 0.0, std::numeric_limits<double>::infinity()}};
  const auto cdf = latency_cdf(result, 50.0);
  CHECK(cdf.fraction_within_bound == doctest::Approx(1.0 / 3.0));

  LatencyResult ones;
  for (int i = 0; i < 5; ++i) ones.samples.push_back({i, 0, 0.0, 1.0});
  CHECK(latency_cdf(ones, 50.0).fraction_within_bound == 1.0);
}

TEST_CASE("utilization is nondecreasing in offered load") {
  const radio::Scene scene = make_scene(1);
  double prev = -1.0;
  for (double period : {200.0, 150.0, 100.0, 50.0}) {
    LatencyScenario scn;
    scn.ue_height_m = 100.0;
    scn.prb_pool = 6;
    scn.sim_duration_ms = 5000.0;
    scn.seed = 11;
    scn.traffic.period_ms = period;
    const auto result = run_latency_sim(scene, scn);
    CHECK(result.utilization >= 0.0);
    CHECK(result.utilization <= 1.0);
    CHECK(result.utilization >= prev - 1e-12);
    prev = result.utilization;
  }
}

TEST_CASE("delivered bits never exceed granted capacity") {
  const radio::Scene scene = make_scene(1);
  LatencyScenario scn;
  scn.ue_height_m = 100.0;
  scn.prb_pool = 6;
  scn.sim_duration_ms = 3000.0;
  scn.seed = 2;
  const auto result = run_latency_sim(scene, scn);

  const double delivered_bits = 10000.0 * static_cast<double>(result.delivered_packets);
  CHECK(delivered_bits <= result.granted_capacity_bits + 1e-6);
  CHECK(result.delivered_packets <= result.offered_packets);

  // Minimum feasible latency: ceil(bits / (cap * prbs * 180)) TTIs.
  const double min_ttis =
      std::ceil(10000.0 / (scn.link_adaptation.efficiency_cap_bps_hz * scn.prb_pool * 180.0));
  for (const auto& s : result.samples) {
    if (std::isfinite(s.latency_ms)) CHECK(s.latency_ms >= min_ttis);
  }
}

TEST_CASE("same seed reproduces the result exactly") {
  const radio::Scene scene = make_scene(1);
  LatencyScenario scn;
  scn.ue_height_m = 50.0;
  scn.prb_pool = 15;
  scn.sim_duration_ms = 2000.0;
  scn.seed = 21;
  const auto a = run_latency_sim(scene, scn);
  const auto b = run_latency_sim(scene, scn);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].latency_ms == b.samples[i].latency_ms);
  }
  CHECK(a.utilization == b.utilization);
}

TEST_CASE("short durations are rejected") {
  const radio::Scene scene = make_single_cell_scene();
  LatencyScenario scn;
  scn.sim_duration_ms = 500.0;  // less than 10 periods of 100 ms
  CHECK_THROWS_AS(run_latency_sim(scene, scn), ConfigError);
}
