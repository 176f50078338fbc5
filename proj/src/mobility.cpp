// SPDX-License-Identifier: Apache-2.0
#include "aeronet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aeronet/error.hpp"
#include "aeronet/parallel.hpp"
#include "aeronet/rng.hpp"

namespace aeronet::mobility {

double path_length_m(const Trajectory& trajectory) {
  double total = 0.0;
  for (std::size_t i = 1; i < trajectory.waypoints.size(); ++i) {
    total += norm(trajectory.waypoints[i] - trajectory.waypoints[i - 1]);
  }
  return total;
}

std::vector<RouteSample> build_route(const Trajectory& trajectory) {
  if (trajectory.waypoints.size() < 2) {
    throw std::invalid_argument("trajectory: at least 2 waypoints required");
  }
  if (!(trajectory.speed_mps > 0.0)) {
    throw std::invalid_argument("trajectory: speed must be > 0");
  }
  if (!(trajectory.sample_dt_ms > 0.0)) {
    throw std::invalid_argument("trajectory: sample_dt_ms must be > 0");
  }
  const double total = path_length_m(trajectory);
  if (!(total > 0.0)) throw std::invalid_argument("trajectory: zero-length path");

  const double step_m = trajectory.speed_mps * trajectory.sample_dt_ms / 1000.0;
  const auto steps = static_cast<std::size_t>(std::ceil(total / step_m - 1e-9));

  std::vector<double> cum(trajectory.waypoints.size(), 0.0);
  for (std::size_t i = 1; i < trajectory.waypoints.size(); ++i) {
    cum[i] = cum[i - 1] + norm(trajectory.waypoints[i] - trajectory.waypoints[i - 1]);
  }

  std::vector<RouteSample> samples;
  samples.reserve(steps + 1);
  std::size_t seg = 0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double s = std::min(static_cast<double>(k) * step_m, total);
    while (seg + 2 < cum.size() && cum[seg + 1] < s) ++seg;
    const Vec2 a = trajectory.waypoints[seg];
    const Vec2 b = trajectory.waypoints[seg + 1];
    const double seg_len = cum[seg + 1] - cum[seg];
    const double f = seg_len > 0.0 ? std::clamp((s - cum[seg]) / seg_len, 0.0, 1.0) : 0.0;
    const Vec2 p = a + f * (b - a);
    samples.push_back({static_cast<double>(k) * trajectory.sample_dt_ms,
                       {p.x, p.y, trajectory.height_m}});
  }
  return samples;
}

std::vector<double> correlated_shadow_track(std::uint64_t seed, int route_id, int cell_id,
                                            std::size_t n, double step_m, double sigma_db,
                                            double decorrelation_m) {
  if (!(decorrelation_m > 0.0)) {
    throw std::invalid_argument("shadow track: decorrelation_m must be > 0");
  }
  auto stream = rng::derive_stream(seed, rng::Purpose::ShadowTrack,
                                   static_cast<std::uint64_t>(route_id),
                                   static_cast<std::uint64_t>(cell_id));
  const double rho = std::exp(-step_m / decorrelation_m);
  const double innovation = std::sqrt(1.0 - rho * rho);
  std::vector<double> track(n);
  if (n == 0) return track;
  track[0] = sigma_db * stream.gaussian();
  for (std::size_t k = 1; k < n; ++k) {
    track[k] = rho * track[k - 1] + innovation * sigma_db * stream.gaussian();
  }
  return track;
}

std::vector<double> l3_filter(std::span<const double> raw_dbm, int k) {
  if (k < 0) throw std::invalid_argument("l3_filter: k must be >= 0");
  const double a = std::exp2(-k / 4.0);
  std::vector<double> out(raw_dbm.size());
  for (std::size_t i = 0; i < raw_dbm.size(); ++i) {
    out[i] = i == 0 ? raw_dbm[0] : (1.0 - a) * out[i - 1] + a * raw_dbm[i];
  }
  return out;
}

A3Trigger::A3Trigger(const HandoverConfig& cfg, std::size_t n_cells)
    : offset_db_(cfg.a3_offset_db),
      ttt_ms_(cfg.time_to_trigger_ms),
      prohibit_ms_(cfg.prohibit_ms),
      prohibit_until_(-std::numeric_limits<double>::infinity()),
      held_ms_(n_cells, -1.0) {}

std::optional<int> A3Trigger::step(double t_ms, double dt_ms,
                                   std::span<const double> filtered_dbm, int serving) {
  const double serving_level = filtered_dbm[static_cast<std::size_t>(serving)];
  for (std::size_t c = 0; c < held_ms_.size(); ++c) {
    if (static_cast<int>(c) == serving ||
        !(filtered_dbm[c] > serving_level + offset_db_)) {
      held_ms_[c] = -1.0;
      continue;
    }
    held_ms_[c] = held_ms_[c] < 0.0 ? 0.0 : held_ms_[c] + dt_ms;
  }
  if (t_ms < prohibit_until_) return std::nullopt;

  int best = -1;
  for (std::size_t c = 0; c < held_ms_.size(); ++c) {
    if (held_ms_[c] < ttt_ms_ - 1e-9) continue;
    if (best < 0 || filtered_dbm[c] > filtered_dbm[static_cast<std::size_t>(best)]) {
      best = static_cast<int>(c);
    }
  }
  if (best < 0) return std::nullopt;
  for (auto& h : held_ms_) h = -1.0;
  prohibit_until_ = t_ms + prohibit_ms_;
  return best;
}

void A3Trigger::notify_serving_changed() {
  for (auto& h : held_ms_) h = -1.0;
  prohibit_until_ = -std::numeric_limits<double>::infinity();
}

bool threshold_condition(std::span<const double> filtered, const ThresholdTrigger& trig) {
  int above = 0;
  for (double v : filtered) {
    if (v > trig.threshold) ++above;
  }
  return above >= trig.n_cells;
}

const char* event_name(EventType type) {
  switch (type) {
    case EventType::CellSelected: return "CellSelected";
    case EventType::ReportTriggered: return "ReportTriggered";
    case EventType::HandoverCommand: return "HandoverCommand";
    case EventType::HandoverComplete: return "HandoverComplete";
    case EventType::HandoverFailure: return "HandoverFailure";
    case EventType::RlfDeclared: return "RlfDeclared";
    case EventType::ThresholdReport: return "ThresholdReport";
  }
  return "Unknown";
}

std::optional<int> HandoverFsm::step(double t_ms, double dt_ms, double serving_sinr_db,
                                     std::optional<int> report_target, int serving,
                                     const HandoverConfig& ho, const RlfConfig& rlf,
                                     int route_id, std::vector<Event>& log) {
  if (phase_ == HoPhase::Connected) {
    if (!report_target) return std::nullopt;
    log.push_back({t_ms, route_id, EventType::ReportTriggered, serving, *report_target});
    if (serving_sinr_db < rlf.qout_db) {
      // Report lost on a failing link.
      log.push_back({t_ms, route_id, EventType::HandoverFailure, serving, *report_target});
      return std::nullopt;
    }
    phase_ = HoPhase::Reporting;
    target_ = *report_target;
    elapsed_ms_ = 0.0;
    return std::nullopt;
  }

  elapsed_ms_ += dt_ms;
  while (true) {
    switch (phase_) {
      case HoPhase::Reporting:
        if (elapsed_ms_ < ho.report_delay_ms) return std::nullopt;
        elapsed_ms_ -= ho.report_delay_ms;
        log.push_back({t_ms, route_id, EventType::HandoverCommand, serving, target_});
        phase_ = HoPhase::CommandPending;
        break;
      case HoPhase::CommandPending:
        if (elapsed_ms_ < ho.ho_command_delay_ms) return std::nullopt;
        elapsed_ms_ -= ho.ho_command_delay_ms;
        if (serving_sinr_db < rlf.qout_db) {
          // Command lost before reaching the UE.
          log.push_back({t_ms, route_id, EventType::HandoverFailure, serving, target_});
          phase_ = HoPhase::Connected;
          target_ = -1;
          return std::nullopt;
        }
        phase_ = HoPhase::Executing;
        break;
      case HoPhase::Executing: {
        if (elapsed_ms_ < ho.ho_execution_ms) return std::nullopt;
        log.push_back({t_ms, route_id, EventType::HandoverComplete, serving, target_});
        const int new_serving = target_;
        phase_ = HoPhase::Connected;
        target_ = -1;
        elapsed_ms_ = 0.0;
        return new_serving;
      }
      case HoPhase::Connected:
        return std::nullopt;
    }
  }
}

void HandoverFsm::abort() {
  phase_ = HoPhase::Connected;
  target_ = -1;
  elapsed_ms_ = 0.0;
}

bool RlfMonitor::step(double dt_ms, double serving_sinr_db, const RlfConfig& cfg) {
  if (serving_sinr_db > cfg.qin_db) {
    below_ms_ = 0.0;
  } else if (serving_sinr_db < cfg.qout_db) {
    below_ms_ += dt_ms;
  }
  return below_ms_ >= cfg.t310_ms - 1e-9;
}

namespace {

struct RouteOutcome {
  std::vector<Event> events;
  std::vector<TracePoint> trace;
  int handovers = 0;
  int rlfs = 0;
  int reports = 0;
  double km = 0.0;
  std::size_t threshold_true = 0;
  std::size_t threshold_samples = 0;
};

int argmax_cell(std::span<const double> values) {
  int best = 0;
  for (std::size_t c = 1; c < values.size(); ++c) {
    if (values[c] > values[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  }
  return best;
}

RouteOutcome run_route(const radio::Scene& scene, const Trajectory& traj,
                       const HandoverConfig& ho, const RlfConfig& rlf,
                       const MobilityOptions& opts, std::uint64_t seed, int route_id,
                       bool want_trace) {
  const auto samples = build_route(traj);
  const std::size_t nc = scene.cells.size();
  const double step_m = traj.speed_mps * traj.sample_dt_ms / 1000.0;
  const double activity = opts.interference_activity;
  const double noise_lin = db_to_linear(channel::noise_per_re_dbm(scene.channel));
  const double filter_a = std::exp2(-ho.l3_filter_k / 4.0);

  // Unit-variance correlated tracks, scaled per sample by the local sigma.
  std::vector<std::vector<double>> tracks(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    tracks[c] = correlated_shadow_track(seed, route_id, static_cast<int>(c), samples.size(),
                                        step_m, 1.0, scene.channel.sf_decorrelation_m);
  }

  RouteOutcome out;
  out.km = path_length_m(traj) / 1000.0;

  std::vector<double> raw(nc);
  std::vector<double> raw_lin(nc);
  std::vector<double> filt(nc);
  A3Trigger a3(ho, nc);
  HandoverFsm fsm;
  RlfMonitor monitor;
  int serving = -1;
  bool reestablishing = false;
  double resume_t = 0.0;
  bool prev_threshold = false;
  double prev_t = 0.0;

  auto serving_sinr = [&](int cell) {
    double denom = noise_lin;
    for (std::size_t c = 0; c < nc; ++c) {
      if (static_cast<int>(c) != cell) denom += raw_lin[c] * activity;
    }
    return linear_to_db(raw_lin[static_cast<std::size_t>(cell)] / denom);
  };

  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double t = samples[k].t_ms;
    const Vec3 pos = samples[k].pos;
    for (std::size_t c = 0; c < nc; ++c) {
      const Vec3 bs = scene.bs_pos_toward(static_cast<int>(c), pos);
      channel::LinkState link = channel::median_link_state(bs, pos, scene.channel);
      const double sigma = channel::shadow_sigma_db(pos.z, link.los, scene.channel);
      link.shadow_db = sigma * tracks[c][k];
      raw[c] = channel::rx_power_per_re_dbm(scene.cells[c], bs, pos, link, scene.pattern,
                                            scene.channel);
      raw_lin[c] = db_to_linear(raw[c]);
      filt[c] = k == 0 ? raw[c] : (1.0 - filter_a) * filt[c] + filter_a * raw[c];
    }

    double sinr = std::numeric_limits<double>::quiet_NaN();
    int trace_serving = -1;

    if (k == 0) {
      serving = argmax_cell(raw);
      out.events.push_back({t, route_id, EventType::CellSelected, -1, serving});
      sinr = serving_sinr(serving);
      trace_serving = serving;
    } else {
      const double dt = t - prev_t;
      if (reestablishing && t >= resume_t) {
        serving = argmax_cell(raw);
        out.events.push_back({t, route_id, EventType::CellSelected, -1, serving});
        monitor.reset();
        a3.notify_serving_changed();
        fsm.abort();
        reestablishing = false;
      }
      if (!reestablishing) {
        sinr = serving_sinr(serving);
        trace_serving = serving;
        if (monitor.step(dt, sinr, rlf)) {
          out.events.push_back({t, route_id, EventType::RlfDeclared, serving, -1});
          ++out.rlfs;
          fsm.abort();
          monitor.reset();
          serving = -1;
          reestablishing = true;
          resume_t = t + rlf.reestablish_delay_ms;
        } else {
          std::optional<int> report;
          if (fsm.phase() == HoPhase::Connected) {
            report = a3.step(t, dt, filt, serving);
            if (report) ++out.reports;
          }
          const auto new_serving =
              fsm.step(t, dt, sinr, report, serving, ho, rlf, route_id, out.events);
          if (new_serving) {
            serving = *new_serving;
            ++out.handovers;
            monitor.reset();
            a3.notify_serving_changed();
          }
        }
      }
    }
    prev_t = t;

    if (ho.threshold_trigger) {
      const bool cond = threshold_condition(filt, *ho.threshold_trigger);
      ++out.threshold_samples;
      if (cond) ++out.threshold_true;
      if (cond && !prev_threshold) {
        out.events.push_back({t, route_id, EventType::ThresholdReport, trace_serving, -1});
      }
      prev_threshold = cond;
    }

    if (want_trace) {
      out.trace.push_back({t, filt, trace_serving, sinr});
    }
  }
  return out;
}

}  // namespace

MobilityResult run_mobility_sim(const radio::Scene& scene,
                                std::span<const Trajectory> routes,
                                const HandoverConfig& ho, const RlfConfig& rlf,
                                const MobilityOptions& options, std::uint64_t seed) {
  if (routes.empty()) throw ConfigError("mobility: at least one route required");
  if (scene.cells.empty()) throw ConfigError("mobility: scene has no cells");
  if (!(options.interference_activity >= 0.0 && options.interference_activity <= 1.0)) {
    throw ConfigError("mobility.interference_activity: must lie in [0,1]");
  }

  std::vector<RouteOutcome> outcomes(routes.size());
  parallel_for(routes.size(), [&](std::size_t r) {
    outcomes[r] = run_route(scene, routes[r], ho, rlf, options, seed, static_cast<int>(r),
                            static_cast<int>(r) == options.trace_route);
  });

  MobilityResult result;
  std::size_t thr_true = 0;
  std::size_t thr_all = 0;
  for (auto& oc : outcomes) {
    result.events.insert(result.events.end(), oc.events.begin(), oc.events.end());
    result.handovers += oc.handovers;
    result.rlfs += oc.rlfs;
    result.reports += oc.reports;
    result.km_flown += oc.km;
    thr_true += oc.threshold_true;
    thr_all += oc.threshold_samples;
    if (!oc.trace.empty()) result.trace = std::move(oc.trace);
  }
  std::stable_sort(result.events.begin(), result.events.end(),
                   [](const Event& a, const Event& b) { return a.t_ms < b.t_ms; });
  result.threshold_fraction =
      thr_all > 0 ? static_cast<double>(thr_true) / static_cast<double>(thr_all) : 0.0;
  return result;
}

}  // namespace aeronet::mobility
