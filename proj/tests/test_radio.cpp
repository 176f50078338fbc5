// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "aeronet/error.hpp"
#include "aeronet/radio.hpp"
#include "aeronet/rng.hpp"

using namespace aeronet;
using namespace aeronet::radio;

namespace {

Scene make_scene(int rings) {
  Scene scene;
  scene.layout = deployment::build_hex_layout(500.0, rings, 25.0);
  scene.cells = deployment::sectorize(scene.layout, {0.0, 120.0, 240.0}, 46.0);
  return scene;
}

std::vector<channel::LinkState> no_fading(std::size_t n) {
  return std::vector<channel::LinkState>(n, channel::LinkState{true, 0.0});
}

}  // namespace

TEST_CASE("measure_all single cell") {
  Scene scene = make_scene(0);
  scene.cells.resize(1);
  const auto set = measure_all(scene, {200.0, 30.0, 1.5}, no_fading(1));
  CHECK(set.strongest() == 0);
  CHECK(set.serving_cell_id == 0);
  CHECK(associate_max_power(set) == 0);
}

TEST_CASE("ordering follows shadow on symmetric links") {
  Scene scene = make_scene(0);
  scene.cells.resize(2);
  scene.cells[1].bearing_deg = 180.0;
  // UE centered between the two boresights; identical geometry by symmetry.
  std::vector<channel::LinkState> links{{true, -3.0}, {true, +3.0}};
  const Vec3 ue{0.0, 300.0, 1.5};
  const auto set = measure_all(scene, ue, links);
  CHECK(set.strongest() == 0);  // -3 dB shadow means 3 dB more power
  CHECK(set.rsrp_dbm[0] == doctest::Approx(set.rsrp_dbm[1] + 6.0).epsilon(1e-12));
  CHECK(set.neighbor(1) == 1);
}

TEST_CASE("measurement ordering matches independent re-sort on random scenes") {
  const Scene scene = make_scene(2);
  auto stream = rng::derive_stream(23, rng::Purpose::RouteGeometry, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 ue{stream.uniform(-1000.0, 1000.0), stream.uniform(-1000.0, 1000.0),
                  stream.uniform(1.5, 300.0)};
    std::vector<channel::LinkState> links(scene.cells.size());
    for (std::size_t c = 0; c < links.size(); ++c) {
      links[c] = channel::sample_link_state(7, static_cast<int>(c), trial,
                                            scene.bs_pos(static_cast<int>(c)), ue,
                                            scene.channel);
    }
    const auto set = measure_all(scene, ue, links);

    // Oracle: recompute each power independently and sort.
    std::vector<std::pair<double, int>> oracle;
    for (std::size_t c = 0; c < scene.cells.size(); ++c) {
      const double rsrp = channel::rx_power_per_re_dbm(
          scene.cells[c], scene.bs_pos(static_cast<int>(c)), ue, links[c], scene.pattern,
          scene.channel);
      oracle.emplace_back(-rsrp, static_cast<int>(c));
    }
    std::sort(oracle.begin(), oracle.end());
    REQUIRE(set.order.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      CHECK(set.order[i] == oracle[i].second);
    }
  }
}

namespace {

MeasurementSet synthetic_set(std::vector<double> rsrp, int serving) {
  MeasurementSet set;
  set.rsrp_dbm = std::move(rsrp);
  set.order.resize(set.rsrp_dbm.size());
  std::iota(set.order.begin(), set.order.end(), 0);
  std::sort(set.order.begin(), set.order.end(), [&](int a, int b) {
    if (set.rsrp_dbm[a] != set.rsrp_dbm[b]) return set.rsrp_dbm[a] > set.rsrp_dbm[b];
    return a < b;
  });
  set.serving_cell_id = serving;
  return set;
}

}  // namespace

TEST_CASE("rsrq identities") {
  const double quiet = -300.0;  // noise far below signal

  // Single cell at full load: N*S / (12*N*S) = 1/12.
  const auto one = synthetic_set({-60.0}, 0);
  CHECK(rsrq_db(one, std::vector<double>{1.0}, 50, quiet) ==
        doctest::Approx(-10.79).epsilon(1e-3));

  // One equal-power interferer at activity 1: 1/24.
  const auto two = synthetic_set({-60.0, -60.0}, 0);
  CHECK(rsrq_db(two, std::vector<double>{1.0, 1.0}, 50, quiet) ==
        doctest::Approx(-13.80).epsilon(1e-3));

  // Interferer silent: back to the single-cell value.
  CHECK(rsrq_db(two, std::vector<double>{1.0, 0.0}, 50, quiet) ==
        doctest::Approx(-10.79).epsilon(1e-3));

  CHECK_THROWS_AS(rsrq_db(two, std::vector<double>{1.0, 1.5}, 50, quiet), ConfigError);
  CHECK_THROWS_AS(rsrq_db(two, std::vector<double>{1.0}, 50, quiet), ConfigError);
}

TEST_CASE("rsrq bounded by -10.79 dB at full activity") {
  auto stream = rng::derive_stream(31, rng::Purpose::RouteGeometry, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(stream.uniform() * 8.0);
    std::vector<double> rsrp(static_cast<std::size_t>(n));
    for (auto& v : rsrp) v = stream.uniform(-120.0, -50.0);
    const auto set = synthetic_set(rsrp, static_cast<int>(stream.uniform() * n));
    const std::vector<double> act(static_cast<std::size_t>(n), 1.0);
    CHECK(rsrq_db(set, act, 50, -123.24) <= -10.79 + 1e-6);
  }
}

TEST_CASE("rs-sinr identities") {
  // Serving power equal to noise, no interferers: 0 dB.
  const auto one = synthetic_set({-123.24}, 0);
  CHECK(rs_sinr_db(one, std::vector<double>{1.0}, -123.24) == doctest::Approx(0.0).epsilon(1e-9));

  // One interferer equal to the serving power, noise negligible.
  const auto two = synthetic_set({-61.76, -61.76}, 0);
  CHECK(rs_sinr_db(two, std::vector<double>{1.0, 1.0}, -300.0) ==
        doctest::Approx(0.0).epsilon(1e-9));

  // -61.76 serving, -70 interferer, -123.24 noise -> about 8.24 dB.
  const auto mix = synthetic_set({-61.76, -70.0}, 0);
  CHECK(rs_sinr_db(mix, std::vector<double>{1.0, 1.0}, -123.24) ==
        doctest::Approx(8.24).epsilon(0.01 / 8.24));
}

TEST_CASE("rs-sinr strictly decreases as interferer activity rises") {
  const auto set = synthetic_set({-60.0, -68.0, -72.0}, 0);
  double prev = 1e9;
  for (double act = 0.0; act <= 1.0; act += 0.1) {
    const double v = rs_sinr_db(set, std::vector<double>{1.0, act, 0.5}, -123.24);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("max-power association tie-break and offset invariance") {
  std::vector<double> rsrp(13, -100.0);
  rsrp[7] = -60.0;
  rsrp[12] = -60.0;
  const auto set = synthetic_set(rsrp, 0);
  CHECK(associate_max_power(set) == 7);

  std::vector<double> shifted = rsrp;
  for (auto& v : shifted) v += 10.0;
  CHECK(associate_max_power(synthetic_set(shifted, 0)) == 7);
}

TEST_CASE("coverage map on a single site") {
  const Scene scene = make_scene(0);
  GridSpec grid;
  grid.origin_x_m = -300.0;
  grid.origin_y_m = -300.0;
  grid.spacing_m = 30.0;
  grid.nx = 20;
  grid.ny = 20;
  grid.height_m = 1.5;
  const auto map = coverage_map(scene, grid, FadingMode::Off, 1);
  for (int site : map.serving_site) CHECK(site == 0);

  const auto stats = fragmentation_stats(map, scene.layout);
  CHECK(stats.non_nearest_fraction == 0.0);
  CHECK(stats.component_count == 1);
}

TEST_CASE("coverage map point at a site is served by that site") {
  const Scene scene = make_scene(2);
  GridSpec grid;
  grid.origin_x_m = -5.5;
  grid.origin_y_m = -5.5;
  grid.spacing_m = 10.0;
  grid.nx = 1;
  grid.ny = 1;
  grid.height_m = 1.5;  // point lands at (-0.5, -0.5), at the center site
  const auto map = coverage_map(scene, grid, FadingMode::Off, 1);
  CHECK(map.serving_site[0] == 0);

  // Brute-force oracle over all 57 cells at that point.
  const Vec3 pos{grid.x_at(0), grid.y_at(0), grid.height_m};
  double best = -1e12;
  int best_cell = -1;
  for (std::size_t c = 0; c < scene.cells.size(); ++c) {
    const Vec3 bs = scene.bs_pos(static_cast<int>(c));
    const auto link = channel::median_link_state(bs, pos, scene.channel);
    const double rsrp = channel::rx_power_per_re_dbm(scene.cells[c], bs, pos, link,
                                                     scene.pattern, scene.channel);
    if (rsrp > best) {
      best = rsrp;
      best_cell = static_cast<int>(c);
    }
  }
  CHECK(map.serving_cell[0] == best_cell);
  CHECK(map.best_rsrp_dbm[0] == doctest::Approx(best));
}

TEST_CASE("sampled coverage map is seed-deterministic") {
  const Scene scene = make_scene(1);
  GridSpec grid;
  grid.origin_x_m = -400.0;
  grid.origin_y_m = -400.0;
  grid.spacing_m = 80.0;
  grid.nx = 10;
  grid.ny = 10;
  grid.height_m = 50.0;
  const auto a = coverage_map(scene, grid, FadingMode::Sampled, 77);
  const auto b = coverage_map(scene, grid, FadingMode::Sampled, 77);
  CHECK(a.serving_cell == b.serving_cell);
  CHECK(a.rs_sinr_db == b.rs_sinr_db);

  const auto c = coverage_map(scene, grid, FadingMode::Sampled, 78);
  CHECK(a.serving_cell != c.serving_cell);  // different seed, different shadowing
}

TEST_CASE("fragmentation grows from ground to 300 m") {
  const Scene scene = make_scene(2);
  GridSpec grid;
  grid.origin_x_m = -750.0;
  grid.origin_y_m = -750.0;
  grid.spacing_m = 25.0;
  grid.nx = 60;
  grid.ny = 60;

  grid.height_m = 1.5;
  const auto ground = fragmentation_stats(coverage_map(scene, grid, FadingMode::Off, 1),
                                          scene.layout);
  grid.height_m = 300.0;
  const auto sky = fragmentation_stats(coverage_map(scene, grid, FadingMode::Off, 1),
                                       scene.layout);

  CHECK(ground.non_nearest_fraction < 0.1);
  CHECK(sky.component_count > ground.component_count);
  CHECK(sky.non_nearest_fraction > ground.non_nearest_fraction);
}
