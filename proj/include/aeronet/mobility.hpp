// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aeronet/radio.hpp"

namespace aeronet::mobility {

struct Trajectory {
  std::vector<Vec2> waypoints;
  double speed_mps = 8.3333333333333339;  // 30 km/h
  double height_m = 300.0;
  double sample_dt_ms = 100.0;
};

struct RouteSample {
  double t_ms;
  Vec3 pos;
};

// Piecewise-linear constant-speed interpolation; ceil(L/(v*dt)) + 1 samples.
std::vector<RouteSample> build_route(const Trajectory& trajectory);

double path_length_m(const Trajectory& trajectory);

// Gauss-Markov series: s[n+1] = rho*s[n] + sqrt(1-rho^2)*w, rho =
// exp(-step/decorrelation), stationary std sigma_db.
std::vector<double> correlated_shadow_track(std::uint64_t seed, int route_id, int cell_id,
                                            std::size_t n, double step_m, double sigma_db,
                                            double decorrelation_m);

// Layer-3 filtering in the dB domain: F = (1-a)*F_prev + a*M, a = 1/2^(k/4).
std::vector<double> l3_filter(std::span<const double> raw_dbm, int k);

struct ThresholdTrigger {
  enum class Metric { Rsrp, Rsrq, RsSinr };
  Metric metric = Metric::Rsrp;
  double threshold = -90.0;  // dBm for RSRP, dB otherwise
  int n_cells = 4;
};

struct HandoverConfig {
  double a3_offset_db = 3.0;  // X
  double time_to_trigger_ms = 160.0;
  int l3_filter_k = 4;
  double report_delay_ms = 50.0;
  double ho_command_delay_ms = 50.0;
  double ho_execution_ms = 40.0;
  double prohibit_ms = 1000.0;  // re-arm delay after a fired report
  std::optional<ThresholdTrigger> threshold_trigger;
};

struct RlfConfig {
  double qout_db = -8.0;
  double qin_db = -6.0;
  double t310_ms = 1000.0;
  double reestablish_delay_ms = 200.0;
};

// A3 entering condition with per-neighbor time-to-trigger accounting.
class A3Trigger {
 public:
  A3Trigger(const HandoverConfig& cfg, std::size_t n_cells);

  // Evaluates one sample; returns the report target when a report fires.
  std::optional<int> step(double t_ms, double dt_ms, std::span<const double> filtered_dbm,
                          int serving);
  void notify_serving_changed();

 private:
  double offset_db_;
  double ttt_ms_;
  double prohibit_ms_;
  double prohibit_until_;
  std::vector<double> held_ms_;  // -1 when no active streak
};

// True when >= n_cells entries exceed the trigger threshold.
bool threshold_condition(std::span<const double> filtered, const ThresholdTrigger& trig);

enum class EventType {
  CellSelected,
  ReportTriggered,
  HandoverCommand,
  HandoverComplete,
  HandoverFailure,
  RlfDeclared,
  ThresholdReport,
};

const char* event_name(EventType type);

struct Event {
  double t_ms;
  int route_id;
  EventType type;
  int cell_from;  // -1 when not applicable
  int cell_to;
};

enum class HoPhase { Connected, Reporting, CommandPending, Executing };

// Handover procedure: Connected -> Reporting -> CommandPending -> Executing.
// The report is lost when serving RS-SINR < Qout at the trigger instant; the
// command is lost under the same test when it reaches the UE.
class HandoverFsm {
 public:
  HoPhase phase() const { return phase_; }
  int target() const { return target_; }

  // Returns the new serving cell when a handover completes this step.
  std::optional<int> step(double t_ms, double dt_ms, double serving_sinr_db,
                          std::optional<int> report_target, int serving,
                          const HandoverConfig& ho, const RlfConfig& rlf, int route_id,
                          std::vector<Event>& log);
  void abort();

 private:
  HoPhase phase_ = HoPhase::Connected;
  int target_ = -1;
  double elapsed_ms_ = 0.0;
};

// T310 supervision: accumulates time below Qout, resets above Qin, holds in
// between. Declares RLF when the accumulated time reaches t310_ms.
class RlfMonitor {
 public:
  // Steps one interval; true when RLF fires (caller must reset).
  bool step(double dt_ms, double serving_sinr_db, const RlfConfig& cfg);
  void reset() { below_ms_ = 0.0; }
  double accumulated_ms() const { return below_ms_; }

 private:
  double below_ms_ = 0.0;
};

struct TracePoint {
  double t_ms;
  std::vector<double> rsrp_filtered_dbm;  // per cell
  int serving;                            // -1 during re-establishment
  double serving_sinr_db;                 // NaN during re-establishment
};

struct MobilityResult {
  std::vector<Event> events;  // merged, ordered by (t, route)
  std::vector<TracePoint> trace;  // for the requested trace route only
  int handovers = 0;
  int rlfs = 0;
  int reports = 0;
  double km_flown = 0.0;
  double threshold_fraction = 0.0;  // share of samples meeting the threshold trigger
};

struct MobilityOptions {
  double interference_activity = 1.0;  // activity factor of non-serving cells
  int trace_route = 0;                 // route whose full trace is kept (-1: none)
};

MobilityResult run_mobility_sim(const radio::Scene& scene,
                                std::span<const Trajectory> routes,
                                const HandoverConfig& ho, const RlfConfig& rlf,
                                const MobilityOptions& options, std::uint64_t seed);

}  // namespace aeronet::mobility
