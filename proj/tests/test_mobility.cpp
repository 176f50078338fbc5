// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "aeronet/mobility.hpp"
#include "aeronet/stats.hpp"

using namespace aeronet;
using namespace aeronet::mobility;

namespace {

radio::Scene make_scene(int rings) {
  radio::Scene scene;
  scene.layout = deployment::build_hex_layout(500.0, rings, 25.0);
  scene.cells = deployment::sectorize(scene.layout, {0.0, 120.0, 240.0}, 46.0);
  return scene;
}

}  // namespace

TEST_CASE("build_route sample count and endpoints") {
  Trajectory tr;
  tr.waypoints = {{0.0, 0.0}, {100.0, 0.0}};
  tr.speed_mps = 10.0;
  tr.height_m = 50.0;
  tr.sample_dt_ms = 100.0;
  const auto route = build_route(tr);
  REQUIRE(route.size() == 101);
  CHECK(route.front().pos.x == 0.0);
  CHECK(route.back().pos.x == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(route.back().t_ms == doctest::Approx(10000.0));
  for (const auto& s : route) CHECK(s.pos.z == 50.0);

  // Multi-segment endpoints are preserved exactly.
  Trajectory bent;
  bent.waypoints = {{0.0, 0.0}, {30.0, 0.0}, {30.0, 40.0}};
  bent.speed_mps = 7.0;
  bent.sample_dt_ms = 100.0;
  const auto path = build_route(bent);
  CHECK(path.front().pos.x == 0.0);
  CHECK(path.back().pos.x == doctest::Approx(30.0));
  CHECK(path.back().pos.y == doctest::Approx(40.0));

  Trajectory lone;
  lone.waypoints = {{0.0, 0.0}};
  CHECK_THROWS_AS(build_route(lone), std::invalid_argument);
  Trajectory still;
  still.waypoints = {{5.0, 5.0}, {5.0, 5.0}};
  CHECK_THROWS_AS(build_route(still), std::invalid_argument);
}

TEST_CASE("30 km/h covers 58.33 m in 7 s") {
  Trajectory tr;
  tr.waypoints = {{0.0, 0.0}, {1000.0, 0.0}};
  tr.speed_mps = 30.0 / 3.6;
  tr.sample_dt_ms = 100.0;
  const auto route = build_route(tr);
  const auto& at7s = route[70];
  CHECK(at7s.t_ms == doctest::Approx(7000.0));
  CHECK(at7s.pos.x == doctest::Approx(58.333).epsilon(1e-4));
}

TEST_CASE("shadow track basics") {
  const auto zeros = correlated_shadow_track(1, 0, 0, 1000, 5.0, 0.0, 50.0);
  for (double v : zeros) CHECK(v == 0.0);

  // Huge step: consecutive samples essentially independent.
  const auto rough = correlated_shadow_track(1, 0, 1, 10000, 5000.0, 6.0, 50.0);
  double lag1 = 0.0, var = 0.0;
  for (std::size_t i = 1; i < rough.size(); ++i) lag1 += rough[i] * rough[i - 1];
  for (double v : rough) var += v * v;
  CHECK(std::abs(lag1 / var) < 0.05);
}

TEST_CASE("shadow track lag-1 autocorrelation matches exp(-d/dcorr)") {
  const double step = 10.0;
  const double dcorr = 50.0;
  const auto track = correlated_shadow_track(3, 2, 5, 100000, step, 6.0, dcorr);
  double lag1 = 0.0, var = 0.0;
  for (std::size_t i = 1; i < track.size(); ++i) lag1 += track[i] * track[i - 1];
  for (double v : track) var += v * v;
  CHECK(lag1 / var == doctest::Approx(std::exp(-step / dcorr)).epsilon(0.02 / 0.8));
  // Stationary std close to sigma.
  CHECK(stats::stddev(track) == doctest::Approx(6.0).epsilon(0.05));
}

TEST_CASE("l3 filter") {
  const std::vector<double> raw{-90.0, -80.0, -80.0, -80.0};
  const auto pass = l3_filter(raw, 0);
  CHECK(pass == raw);

  const std::vector<double> constant(10, -75.0);
  for (double v : l3_filter(constant, 4)) CHECK(v == doctest::Approx(-75.0));

  const auto filtered = l3_filter(raw, 4);  // a = 1/2
  CHECK(filtered[0] == -90.0);
  CHECK(filtered[1] == doctest::Approx(-85.0));
  CHECK(filtered[2] == doctest::Approx(-82.5));
}

TEST_CASE("A3 trigger fires after TTT, strict offset") {
  HandoverConfig cfg;  // X=3, TTT=160
  SUBCASE("2.9 dB better never fires") {
    A3Trigger trig(cfg, 2);
    for (double t = 0.0; t <= 5000.0; t += 40.0) {
      const std::vector<double> filt{-80.0, -77.1};
      CHECK(!trig.step(t, 40.0, filt, 0));
    }
  }
  SUBCASE("3.1 dB better fires at exactly TTT") {
    A3Trigger trig(cfg, 2);
    std::optional<int> fired;
    double fire_t = -1.0;
    for (double t = 0.0; t <= 1000.0 && !fired; t += 40.0) {
      const std::vector<double> filt{-80.0, -76.9};
      fired = trig.step(t, 40.0, filt, 0);
      if (fired) fire_t = t;
    }
    REQUIRE(fired);
    CHECK(*fired == 1);
    CHECK(fire_t == doctest::Approx(160.0));
  }
  SUBCASE("best qualifying neighbor is chosen") {
    A3Trigger trig(cfg, 3);
    std::optional<int> fired;
    for (double t = 0.0; t <= 1000.0 && !fired; t += 40.0) {
      const std::vector<double> filt{-80.0, -75.0, -73.0};
      fired = trig.step(t, 40.0, filt, 0);
    }
    REQUIRE(fired);
    CHECK(*fired == 2);
  }
  SUBCASE("prohibit timer spaces repeat reports") {
    A3Trigger trig(cfg, 2);
    std::vector<double> fire_times;
    for (double t = 0.0; t <= 3000.0; t += 40.0) {
      const std::vector<double> filt{-80.0, -76.0};
      if (trig.step(t, 40.0, filt, 0)) fire_times.push_back(t);
    }
    REQUIRE(fire_times.size() >= 2);
    CHECK(fire_times[1] - fire_times[0] >= cfg.prohibit_ms);
  }
}

TEST_CASE("threshold condition") {
  ThresholdTrigger trig;  // rsrp > -90, n >= 4
  const std::vector<double> low(6, -100.0);
  CHECK(!threshold_condition(low, trig));
  const std::vector<double> high{-85.0, -85.0, -85.0, -85.0, -100.0};
  CHECK(threshold_condition(high, trig));
  const std::vector<double> three{-85.0, -85.0, -85.0, -95.0};
  CHECK(!threshold_condition(three, trig));
}

TEST_CASE("handover FSM completes at report + 50 + 50 + 40") {
  HandoverConfig ho;
  RlfConfig rlf;
  HandoverFsm fsm;
  std::vector<Event> log;
  std::optional<int> done;
  double done_t = -1.0;
  for (double t = 0.0; t <= 1000.0 && !done; t += 10.0) {
    const std::optional<int> report = (t == 100.0) ? std::optional<int>(4) : std::nullopt;
    done = fsm.step(t, 10.0, 10.0, report, 2, ho, rlf, 0, log);
    if (done) done_t = t;
  }
  REQUIRE(done);
  CHECK(*done == 4);
  CHECK(done_t == doctest::Approx(240.0));  // trigger at 100 + 140

  REQUIRE(log.size() == 3);
  CHECK(log[0].type == EventType::ReportTriggered);
  CHECK(log[0].t_ms == 100.0);
  CHECK(log[1].type == EventType::HandoverCommand);
  CHECK(log[1].t_ms == doctest::Approx(150.0));
  CHECK(log[2].type == EventType::HandoverComplete);
  CHECK(log[2].cell_to == 4);
}

TEST_CASE("handover fails when the link is below Qout at the loss instants") {
  HandoverConfig ho;
  RlfConfig rlf;

  SUBCASE("report lost at trigger instant") {
    HandoverFsm fsm;
    std::vector<Event> log;
    const auto out = fsm.step(0.0, 10.0, -9.0, 4, 2, ho, rlf, 0, log);
    CHECK(!out);
    CHECK(fsm.phase() == HoPhase::Connected);
    REQUIRE(log.size() == 2);
    CHECK(log[0].type == EventType::ReportTriggered);
    CHECK(log[1].type == EventType::HandoverFailure);
  }

  SUBCASE("command lost at command instant") {
    HandoverFsm fsm;
    std::vector<Event> log;
    std::optional<int> done;
    bool failed = false;
    for (double t = 0.0; t <= 1000.0; t += 10.0) {
      // SINR collapses right when the command should reach the UE (t=100).
      const double sinr = t >= 95.0 ? -9.0 : 10.0;
      const std::optional<int> report = (t == 0.0) ? std::optional<int>(4) : std::nullopt;
      done = fsm.step(t, 10.0, sinr, report, 2, ho, rlf, 0, log);
      for (const auto& e : log) {
        if (e.type == EventType::HandoverFailure) failed = true;
      }
      if (failed) break;
    }
    CHECK(!done);
    CHECK(failed);
    CHECK(fsm.phase() == HoPhase::Connected);
  }

  SUBCASE("no report keeps the FSM connected") {
    HandoverFsm fsm;
    std::vector<Event> log;
    for (double t = 0.0; t <= 500.0; t += 10.0) {
      CHECK(!fsm.step(t, 10.0, 5.0, std::nullopt, 2, ho, rlf, 0, log));
    }
    CHECK(fsm.phase() == HoPhase::Connected);
    CHECK(log.empty());
  }
}

TEST_CASE("RLF timer") {
  RlfConfig cfg;  // qout -8, qin -6, t310 1000

  SUBCASE("constant -9 dB declares RLF at exactly 1000 ms") {
    RlfMonitor mon;
    double rlf_t = -1.0;
    for (double t = 100.0; t <= 3000.0; t += 100.0) {
      if (mon.step(100.0, -9.0, cfg)) {
        rlf_t = t;
        break;
      }
    }
    CHECK(rlf_t == doctest::Approx(1000.0));
  }

  SUBCASE("short dip followed by recovery does not declare") {
    RlfMonitor mon;
    bool rlf = false;
    for (double t = 100.0; t <= 5000.0; t += 100.0) {
      const double sinr = (t <= 400.0) ? -9.0 : -5.0;  // 400 ms below, then above Qin
      if (mon.step(100.0, sinr, cfg)) rlf = true;
    }
    CHECK(!rlf);
    CHECK(mon.accumulated_ms() == 0.0);
  }

  SUBCASE("holds between Qout and Qin") {
    RlfMonitor mon;
    mon.step(100.0, -9.0, cfg);
    CHECK(mon.accumulated_ms() == 100.0);
    mon.step(100.0, -7.0, cfg);  // in the hysteresis band: hold
    CHECK(mon.accumulated_ms() == 100.0);
    mon.step(100.0, -5.0, cfg);  // above Qin: reset
    CHECK(mon.accumulated_ms() == 0.0);
  }
}

namespace {

// Replays the per-route event stream against the allowed procedure order.
void check_event_order(const std::vector<Event>& events) {
  std::map<int, std::vector<Event>> by_route;
  for (const auto& e : events) by_route[e.route_id].push_back(e);
  for (const auto& [route, evs] : by_route) {
    (void)route;
    enum class Stage { Idle, Reported, Commanded };
    Stage stage = Stage::Idle;
    int target = -1;
    bool first = true;
    for (const auto& e : evs) {
      if (first) {
        REQUIRE(e.type == EventType::CellSelected);
        first = false;
        continue;
      }
      switch (e.type) {
        case EventType::CellSelected:
          stage = Stage::Idle;
          break;
        case EventType::ReportTriggered:
          CHECK(stage == Stage::Idle);  // no overlapping procedures
          stage = Stage::Reported;
          target = e.cell_to;
          break;
        case EventType::HandoverCommand:
          CHECK(stage == Stage::Reported);
          CHECK(e.cell_to == target);
          stage = Stage::Commanded;
          break;
        case EventType::HandoverComplete:
          CHECK(stage == Stage::Commanded);
          CHECK(e.cell_to == target);
          stage = Stage::Idle;
          break;
        case EventType::HandoverFailure:
          CHECK(stage != Stage::Idle);
          stage = Stage::Idle;
          break;
        case EventType::RlfDeclared:
          stage = Stage::Idle;
          break;
        case EventType::ThresholdReport:
          break;
      }
    }
  }
}

}  // namespace

TEST_CASE("single-cell network produces no reports or handovers") {
  radio::Scene scene = make_scene(0);
  scene.cells.resize(1);
  Trajectory tr;
  tr.waypoints = {{50.0, 0.0}, {250.0, 0.0}};
  tr.height_m = 50.0;
  tr.sample_dt_ms = 100.0;
  const auto result = run_mobility_sim(scene, std::vector<Trajectory>{tr}, HandoverConfig{},
                                       RlfConfig{}, MobilityOptions{}, 1);
  CHECK(result.reports == 0);
  CHECK(result.handovers == 0);
  REQUIRE(!result.events.empty());
  CHECK(result.events.front().type == EventType::CellSelected);
}

TEST_CASE("mobility run is seed-deterministic and event ordering is sound") {
  const radio::Scene scene = make_scene(2);
  std::vector<Trajectory> routes;
  for (int r = 0; r < 4; ++r) {
    Trajectory tr;
    tr.waypoints = {{-600.0 + 150.0 * r, -400.0}, {-600.0 + 150.0 * r, 800.0}};
    tr.height_m = (r % 2 == 0) ? 1.5 : 300.0;
    tr.sample_dt_ms = 100.0;
    routes.push_back(tr);
  }
  const auto a = run_mobility_sim(scene, routes, HandoverConfig{}, RlfConfig{},
                                  MobilityOptions{}, 9);
  const auto b = run_mobility_sim(scene, routes, HandoverConfig{}, RlfConfig{},
                                  MobilityOptions{}, 9);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].t_ms == b.events[i].t_ms);
    CHECK(a.events[i].type == b.events[i].type);
    CHECK(a.events[i].cell_to == b.events[i].cell_to);
  }
  check_event_order(a.events);

  // km_flown tracks speed * duration.
  const double expected_km = 4 * 1.2;
  CHECK(a.km_flown == doctest::Approx(expected_km).epsilon(1e-6));
}

TEST_CASE("raising the A3 offset cannot increase the report count") {
  const radio::Scene scene = make_scene(2);
  std::vector<Trajectory> routes;
  for (int r = 0; r < 6; ++r) {
    Trajectory tr;
    const double angle = kPi / 3.0 * r + 0.2;
    tr.waypoints = {{0.0, 0.0},
                    {1500.0 * std::cos(angle), 1500.0 * std::sin(angle)}};
    tr.height_m = 1.5;
    tr.sample_dt_ms = 100.0;
    routes.push_back(tr);
  }
  HandoverConfig base;
  HandoverConfig strict;
  strict.a3_offset_db = 6.0;
  const auto loose = run_mobility_sim(scene, routes, base, RlfConfig{}, MobilityOptions{}, 4);
  const auto tight = run_mobility_sim(scene, routes, strict, RlfConfig{}, MobilityOptions{}, 4);
  CHECK(tight.reports <= loose.reports);
  CHECK(loose.reports > 0);  // ground routes crossing cells do trigger
}

TEST_CASE("threshold trigger rate is higher aloft than at ground") {
  const radio::Scene scene = make_scene(2);
  HandoverConfig ho;
  ho.threshold_trigger = ThresholdTrigger{ThresholdTrigger::Metric::Rsrp, -90.0, 4};

  auto run_at = [&](double h) {
    std::vector<Trajectory> routes;
    for (int r = 0; r < 4; ++r) {
      Trajectory tr;
      const double angle = kPi / 2.0 * r + 0.4;
      tr.waypoints = {{100.0 * std::cos(angle), 100.0 * std::sin(angle)},
                      {1200.0 * std::cos(angle + 0.8), 1200.0 * std::sin(angle + 0.8)}};
      tr.height_m = h;
      tr.sample_dt_ms = 100.0;
      routes.push_back(tr);
    }
    return run_mobility_sim(scene, routes, ho, RlfConfig{}, MobilityOptions{}, 12);
  };

  const auto ground = run_at(1.5);
  const auto aloft = run_at(150.0);
  CHECK(aloft.threshold_fraction > ground.threshold_fraction);
}

TEST_CASE("RLF events in the trace satisfy the T310 definition") {
  const radio::Scene scene = make_scene(2);
  Trajectory tr;
  tr.waypoints = {{-900.0, -700.0}, {900.0, 700.0}};
  tr.height_m = 300.0;
  tr.sample_dt_ms = 100.0;
  RlfConfig rlf;
  const auto result = run_mobility_sim(scene, std::vector<Trajectory>{tr}, HandoverConfig{},
                                       rlf, MobilityOptions{}, 2);
  check_event_order(result.events);
  REQUIRE(!result.trace.empty());

  // For every RLF on the traced route: accumulated time below Qout since the
  // last above-Qin sample must reach T310.
  for (const auto& e : result.events) {
    if (e.type != EventType::RlfDeclared || e.route_id != 0) continue;
    double below = 0.0;
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
      const auto& tp = result.trace[i];
      if (tp.t_ms > e.t_ms) break;
      if (std::isnan(tp.serving_sinr_db)) {
        below = 0.0;
        continue;
      }
      const double dt = tp.t_ms - result.trace[i - 1].t_ms;
      if (tp.serving_sinr_db > rlf.qin_db) {
        below = 0.0;
      } else if (tp.serving_sinr_db < rlf.qout_db) {
        below += dt;
      }
      if (tp.t_ms == e.t_ms) break;
    }
    CHECK(below >= rlf.t310_ms - 1e-6);
  }
}
