// SPDX-License-Identifier: Apache-2.0
#include "aeronet/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "aeronet/csv.hpp"
#include "aeronet/error.hpp"
#include "aeronet/stats.hpp"

namespace aeronet::config {

namespace {

namespace fs = std::filesystem;
using io::fmt_fixed;
using io::fmt_int;

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string height_suffix(std::size_t n_heights, double h) {
  if (n_heights <= 1) return "";
  return "_" + fmt_g(h) + "m";
}

void write_layout_echo(const radio::Scene& scene, const fs::path& dir, std::uint64_t seed) {
  io::CsvWriter sites(dir / "layout.csv", seed, "site_id,x_m,y_m,z_m");
  for (int s = 0; s < scene.layout.site_count(); ++s) {
    const Vec3 p = scene.layout.site_pos3(s);
    sites.line(fmt_int(s) + "," + fmt_fixed(p.x, 3) + "," + fmt_fixed(p.y, 3) + "," +
               fmt_fixed(p.z, 3));
  }
  io::CsvWriter cells(dir / "cells.csv", seed, "cell_id,site_id,bearing_deg");
  for (const auto& c : scene.cells) {
    cells.line(fmt_int(c.cell_id) + "," + fmt_int(c.site_id) + "," +
               fmt_fixed(c.bearing_deg, 1));
  }
}

void write_pgm(const radio::AssociationMap& map, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  int maxval = 1;
  for (int s : map.serving_site) maxval = std::max(maxval, s);
  out << "P2\n" << map.grid.nx << " " << map.grid.ny << "\n" << maxval << "\n";
  for (int iy = map.grid.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < map.grid.nx; ++ix) {
      out << map.serving_site[static_cast<std::size_t>(iy) * static_cast<std::size_t>(map.grid.nx) +
                              static_cast<std::size_t>(ix)];
      out << (ix + 1 == map.grid.nx ? '\n' : ' ');
    }
  }
}

// Fragmentation and medians, optionally restricted to points served by site 0.
MapRow map_summary(const radio::AssociationMap& map, const radio::Scene& scene,
                   bool center_only) {
  MapRow row{};
  row.height_m = map.grid.height_m;
  const auto stats = radio::fragmentation_stats(map, scene.layout);
  row.non_nearest_fraction = stats.non_nearest_fraction;
  row.mean_serving_distance_m = stats.mean_serving_distance_m;
  row.component_count = stats.component_count;

  std::vector<double> rsrp;
  std::vector<double> sinr;
  for (std::size_t i = 0; i < map.serving_site.size(); ++i) {
    if (center_only && map.serving_site[i] != 0) continue;
    rsrp.push_back(map.best_rsrp_dbm[i]);
    sinr.push_back(map.rs_sinr_db[i]);
  }
  if (rsrp.empty()) {
    rsrp.push_back(std::numeric_limits<double>::quiet_NaN());
    sinr.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  row.median_rsrp_dbm = stats::percentile(rsrp, 50.0);
  row.median_rs_sinr_db = stats::percentile(sinr, 50.0);
  return row;
}

std::vector<MapRow> run_map(const Scenario& scn, const MapExperiment& exp,
                            const radio::Scene& scene, const fs::path& dir,
                            std::ostream& log) {
  std::vector<MapRow> rows;
  io::CsvWriter stats_csv(dir / "map_stats.csv", scn.seed,
                          "height_m,non_nearest_fraction,mean_serving_distance_m,"
                          "component_count,median_rsrp_dbm,median_rs_sinr_db");
  const int n = std::max(1, static_cast<int>(std::lround(exp.extent_m / exp.spacing_m)));
  for (double h : exp.heights_m) {
    radio::GridSpec grid;
    grid.origin_x_m = -exp.extent_m / 2.0;
    grid.origin_y_m = -exp.extent_m / 2.0;
    grid.spacing_m = exp.spacing_m;
    grid.nx = n;
    grid.ny = n;
    grid.height_m = h;
    const auto map = radio::coverage_map(scene, grid, exp.fading, scn.seed);

    const std::string suffix = height_suffix(exp.heights_m.size(), h);
    io::CsvWriter csv(dir / ("assoc_map" + suffix + ".csv"), scn.seed,
                      "ix,iy,x_m,y_m,height_m,serving_cell,serving_site,rsrp_dbm,rs_sinr_db");
    for (int iy = 0; iy < grid.ny; ++iy) {
      for (int ix = 0; ix < grid.nx; ++ix) {
        const std::size_t i = static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid.nx) +
                              static_cast<std::size_t>(ix);
        csv.line(fmt_int(ix) + "," + fmt_int(iy) + "," + fmt_fixed(grid.x_at(ix), 3) + "," +
                 fmt_fixed(grid.y_at(iy), 3) + "," + fmt_g(h) + "," +
                 fmt_int(map.serving_cell[i]) + "," + fmt_int(map.serving_site[i]) + "," +
                 fmt_fixed(map.best_rsrp_dbm[i], 4) + "," + fmt_fixed(map.rs_sinr_db[i], 4));
      }
    }
    write_pgm(map, dir / ("assoc_map" + suffix + ".pgm"));

    const MapRow row = map_summary(map, scene, exp.center_only);
    rows.push_back(row);
    stats_csv.line(fmt_g(h) + "," + fmt_fixed(row.non_nearest_fraction, 6) + "," +
                   fmt_fixed(row.mean_serving_distance_m, 3) + "," +
                   fmt_int(row.component_count) + "," + fmt_fixed(row.median_rsrp_dbm, 4) +
                   "," + fmt_fixed(row.median_rs_sinr_db, 4));
    log << "map h=" << fmt_g(h) << " non_nearest=" << fmt_fixed(row.non_nearest_fraction, 4)
        << " components=" << row.component_count
        << " median_rsrp=" << fmt_fixed(row.median_rsrp_dbm, 2)
        << " median_sinr=" << fmt_fixed(row.median_rs_sinr_db, 2) << "\n";
  }
  return rows;
}

std::vector<LatencyRow> run_latency(const Scenario& scn, const LatencyExperiment& exp,
                                    const radio::Scene& scene, const fs::path& dir,
                                    std::ostream& log) {
  std::vector<LatencyRow> rows;
  io::CsvWriter summary(dir / "summary.csv", scn.seed,
                        "height_m,prbs,utilization,frac_within_50ms,p50_ms,p95_ms");
  for (double h : exp.heights_m) {
    latency::LatencyScenario ls;
    ls.ue_height_m = h;
    ls.ues_per_cell = exp.ues_per_cell;
    ls.prb_pool = exp.prb_pool;
    ls.sim_duration_ms = exp.duration_ms;
    ls.seed = scn.seed;
    ls.traffic.period_ms = exp.period_ms;
    ls.traffic.packet_bytes = exp.packet_bytes;
    ls.traffic.latency_bound_ms = exp.latency_bound_ms;
    ls.link_adaptation = exp.link_adaptation;
    ls.min_drop_radius_m = exp.min_drop_radius_m;
    const auto result = latency::run_latency_sim(scene, ls);

    const std::string suffix = height_suffix(exp.heights_m.size(), h);
    io::CsvWriter samples(dir / ("latency_samples" + suffix + ".csv"), scn.seed,
                          "ue_id,cell_id,arrival_ms,latency_ms");
    for (const auto& s : result.samples) {
      samples.line(fmt_int(s.ue_id) + "," + fmt_int(s.cell_id) + "," +
                   fmt_fixed(s.arrival_ms, 3) + "," + fmt_fixed(s.latency_ms, 3));
    }
    // Deterministic thinning keeps the file size bounded at high utilization.
    const std::size_t stride = std::max<std::size_t>(1, result.sinr_samples.size() / 200000);
    io::CsvWriter sinr_csv(dir / ("sinr_samples" + suffix + ".csv"), scn.seed,
                           "t_ms,cell_id,ue_id,sinr_db");
    for (std::size_t i = 0; i < result.sinr_samples.size(); i += stride) {
      const auto& s = result.sinr_samples[i];
      sinr_csv.line(fmt_fixed(s.t_ms, 0) + "," + fmt_int(s.cell_id) + "," +
                    fmt_int(s.ue_id) + "," + fmt_fixed(s.sinr_db, 4));
    }

    // Statistics, optionally over the center site's cells only.
    latency::LatencyResult view;
    double utilization = result.utilization;
    const latency::LatencyResult* stats_from = &result;
    if (exp.center_only) {
      for (const auto& s : result.samples) {
        if (scene.cells[static_cast<std::size_t>(s.cell_id)].site_id == 0) {
          view.samples.push_back(s);
        }
      }
      double acc = 0.0;
      int n_center = 0;
      for (std::size_t c = 0; c < scene.cells.size(); ++c) {
        if (scene.cells[c].site_id == 0) {
          acc += result.per_cell_utilization[c];
          ++n_center;
        }
      }
      utilization = n_center > 0 ? acc / n_center : 0.0;
      stats_from = &view;
    }
    const auto cdf = latency::latency_cdf(*stats_from, exp.latency_bound_ms);

    LatencyRow row{h, exp.prb_pool, utilization, cdf.fraction_within_bound, cdf.p50_ms,
                   cdf.p95_ms};
    rows.push_back(row);
    summary.line(fmt_g(h) + "," + fmt_int(exp.prb_pool) + "," + fmt_fixed(utilization, 6) +
                 "," + fmt_fixed(cdf.fraction_within_bound, 6) + "," +
                 fmt_fixed(cdf.p50_ms, 3) + "," + fmt_fixed(cdf.p95_ms, 3));
    log << "latency h=" << fmt_g(h) << " prbs=" << exp.prb_pool
        << " util=" << fmt_fixed(utilization, 4)
        << " frac_within_" << fmt_g(exp.latency_bound_ms) << "ms="
        << fmt_fixed(cdf.fraction_within_bound, 4) << " p50=" << fmt_fixed(cdf.p50_ms, 2)
        << " p95=" << fmt_fixed(cdf.p95_ms, 2) << "\n";
  }
  return rows;
}

std::vector<MobilityRow> run_mobility(const Scenario& scn, const MobilityExperiment& exp,
                                      const radio::Scene& scene, const fs::path& dir,
                                      std::ostream& log) {
  std::vector<MobilityRow> rows;
  io::CsvWriter summary(dir / "mobility_summary.csv", scn.seed,
                        "height_m,routes,handovers,rlfs,rlf_per_km");
  for (double h : exp.heights_m) {
    const auto routes = build_routes(scn, exp, h);
    mobility::MobilityOptions opts;
    opts.interference_activity = exp.interference_activity;
    opts.trace_route = exp.trace_route;
    const auto result =
        mobility::run_mobility_sim(scene, routes, exp.handover, exp.rlf, opts, scn.seed);

    const std::string suffix = height_suffix(exp.heights_m.size(), h);
    io::CsvWriter events(dir / ("events" + suffix + ".csv"), scn.seed,
                         "t_ms,route_id,event,cell_from,cell_to");
    for (const auto& e : result.events) {
      events.line(fmt_fixed(e.t_ms, 1) + "," + fmt_int(e.route_id) + "," +
                  mobility::event_name(e.type) + "," + fmt_int(e.cell_from) + "," +
                  fmt_int(e.cell_to));
    }
    if (!result.trace.empty()) {
      io::CsvWriter trace(dir / ("trace" + suffix + ".csv"), scn.seed,
                          "t_ms,cell_id,rsrp_filtered_dbm,serving,serving_sinr_db");
      for (const auto& tp : result.trace) {
        for (std::size_t c = 0; c < tp.rsrp_filtered_dbm.size(); ++c) {
          trace.line(fmt_fixed(tp.t_ms, 1) + "," + fmt_int(static_cast<long long>(c)) + "," +
                     fmt_fixed(tp.rsrp_filtered_dbm[c], 4) + "," + fmt_int(tp.serving) + "," +
                     fmt_fixed(tp.serving_sinr_db, 4));
        }
      }
    }

    const double rlf_per_km = result.km_flown > 0.0 ? result.rlfs / result.km_flown : 0.0;
    MobilityRow row{h, static_cast<int>(routes.size()), result.handovers, result.rlfs,
                    rlf_per_km};
    rows.push_back(row);
    summary.line(fmt_g(h) + "," + fmt_int(row.routes) + "," + fmt_int(row.handovers) + "," +
                 fmt_int(row.rlfs) + "," + fmt_fixed(rlf_per_km, 6));
    log << "mobility h=" << fmt_g(h) << " routes=" << row.routes
        << " handovers=" << row.handovers << " rlfs=" << row.rlfs
        << " rlf_per_km=" << fmt_fixed(rlf_per_km, 4) << "\n";
  }
  return rows;
}

}  // namespace

RunReport run_scenario(const Scenario& scenario, std::ostream& log) {
  const fs::path dir(scenario.out_dir);
  fs::create_directories(dir);
  const radio::Scene scene = build_scene(scenario);
  write_layout_echo(scene, dir, scenario.seed);

  RunReport report;
  if (const auto* exp = std::get_if<MapExperiment>(&scenario.experiment)) {
    report.map_rows = run_map(scenario, *exp, scene, dir, log);
  } else if (const auto* exp = std::get_if<LatencyExperiment>(&scenario.experiment)) {
    report.latency_rows = run_latency(scenario, *exp, scene, dir, log);
  } else if (const auto* exp = std::get_if<MobilityExperiment>(&scenario.experiment)) {
    report.mobility_rows = run_mobility(scenario, *exp, scene, dir, log);
  }
  return report;
}

void write_pattern_dump(const Scenario& scenario, std::ostream& log) {
  const fs::path dir(scenario.out_dir);
  fs::create_directories(dir);
  io::CsvWriter csv(dir / "pattern.csv", scenario.seed, "el_deg,az_deg,gain_dbi");
  for (int el = -90; el <= 90; ++el) {
    for (int az = -180; az <= 180; ++az) {
      const double gain = antenna::composite_gain_db(az, el, scenario.antenna);
      csv.line(fmt_int(el) + "," + fmt_int(az) + "," + fmt_fixed(gain, 4));
    }
  }
  log << "pattern-dump el=[-90,90] az=[-180,180] -> pattern.csv\n";
}

}  // namespace aeronet::config
