// SPDX-License-Identifier: Apache-2.0
#include "aeronet/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aeronet/error.hpp"
#include "aeronet/rng.hpp"

namespace aeronet::config {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Strict object view: every key must be consumed, leftovers are rejected.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  const std::string& path() const { return path_; }
  bool has(const char* key) const { return j_.contains(key); }

  const json* take(const char* key) {
    seen_.insert(key);
    if (!j_.contains(key)) return nullptr;
    return &j_.at(key);
  }

  double num(const char* key, double fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(path_ + "." + key + ": expected a number");
    return v->get<double>();
  }

  int integer(const char* key, int fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path_ + "." + key + ": expected an integer");
    return v->get<int>();
  }

  std::uint64_t u64(const char* key, std::uint64_t fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    const bool ok = v->is_number_unsigned() ||
                    (v->is_number_integer() && v->get<std::int64_t>() >= 0);
    if (!ok) throw ConfigError(path_ + "." + key + ": expected a non-negative integer");
    return v->get<std::uint64_t>();
  }

  bool boolean(const char* key, bool fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(path_ + "." + key + ": expected a boolean");
    return v->get<bool>();
  }

  std::string str(const char* key, std::string fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(path_ + "." + key + ": expected a string");
    return v->get<std::string>();
  }

  std::vector<double> num_list(const char* key, std::vector<double> fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_array()) throw ConfigError(path_ + "." + key + ": expected an array");
    std::vector<double> out;
    for (const auto& e : *v) {
      if (!e.is_number()) throw ConfigError(path_ + "." + key + ": expected numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError(path_ + "." + it.key() + ": unknown key");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

LayoutConfig parse_layout(const json& j) {
  Obj o(j, "layout");
  LayoutConfig cfg;
  cfg.isd_m = o.num("isd_m", cfg.isd_m);
  cfg.rings = o.integer("rings", cfg.rings);
  cfg.bs_height_m = o.num("bs_height_m", cfg.bs_height_m);
  cfg.wraparound = o.boolean("wraparound", cfg.wraparound);
  const auto bearings = o.num_list("bearings_deg",
                                   {cfg.bearings_deg[0], cfg.bearings_deg[1], cfg.bearings_deg[2]});
  require(bearings.size() == 3, "layout.bearings_deg: exactly 3 bearings required");
  for (std::size_t i = 0; i < 3; ++i) cfg.bearings_deg[i] = bearings[i];
  cfg.tx_power_dbm = o.num("tx_power_dbm", cfg.tx_power_dbm);
  o.done();
  require(cfg.isd_m > 0.0, "layout.isd_m: must be > 0");
  require(cfg.rings >= 0, "layout.rings: must be >= 0");
  require(cfg.bs_height_m > 0.0, "layout.bs_height_m: must be > 0");
  return cfg;
}

antenna::CompositePattern parse_antenna(const json& j) {
  Obj o(j, "antenna");
  antenna::CompositePattern p;
  p.element.gmax_dbi = o.num("gmax_dbi", p.element.gmax_dbi);
  p.element.hpbw_az_deg = o.num("hpbw_az_deg", p.element.hpbw_az_deg);
  p.element.hpbw_el_deg = o.num("hpbw_el_deg", p.element.hpbw_el_deg);
  p.element.front_back_db = o.num("front_back_db", p.element.front_back_db);
  p.element.sla_db = o.num("sla_db", p.element.sla_db);
  p.array.m_elements = o.integer("m_elements", p.array.m_elements);
  p.array.spacing_wl = o.num("spacing_wl", p.array.spacing_wl);
  p.array.downtilt_deg = o.num("downtilt_deg", p.array.downtilt_deg);
  o.done();
  require(std::isfinite(p.element.gmax_dbi), "antenna.gmax_dbi: must be finite");
  require(p.element.hpbw_az_deg > 0.0 && p.element.hpbw_el_deg > 0.0,
          "antenna.hpbw: beamwidths must be > 0");
  require(p.element.front_back_db > 0.0 && p.element.sla_db > 0.0,
          "antenna.floors: attenuation floors must be > 0");
  require(p.array.m_elements >= 1, "antenna.m_elements: must be >= 1");
  require(p.array.spacing_wl > 0.0, "antenna.spacing_wl: must be > 0");
  require(p.array.downtilt_deg >= 0.0 && p.array.downtilt_deg < 90.0,
          "antenna.downtilt_deg: must lie in [0, 90)");
  return p;
}

channel::ChannelParams parse_channel(const json& j) {
  Obj o(j, "channel");
  channel::ChannelParams p;
  p.fc_ghz = o.num("fc_ghz", p.fc_ghz);
  p.los_always_height_m = o.num("los_always_height_m", p.los_always_height_m);
  p.losprob_scale_m = o.num("losprob_scale_m", p.losprob_scale_m);
  p.pl_los_alpha_db = o.num("pl_los_alpha_db", p.pl_los_alpha_db);
  p.pl_los_beta = o.num("pl_los_beta", p.pl_los_beta);
  p.pl_nlos_alpha_db = o.num("pl_nlos_alpha_db", p.pl_nlos_alpha_db);
  p.pl_nlos_beta = o.num("pl_nlos_beta", p.pl_nlos_beta);
  p.sf_sigma0_db = o.num("sf_sigma0_db", p.sf_sigma0_db);
  p.sf_decay_per_m = o.num("sf_decay_per_m", p.sf_decay_per_m);
  p.sf_sigma_min_db = o.num("sf_sigma_min_db", p.sf_sigma_min_db);
  p.sf_decorrelation_m = o.num("sf_decorrelation_m", p.sf_decorrelation_m);
  p.noise_figure_db = o.num("noise_figure_db", p.noise_figure_db);
  p.system_prbs = o.integer("system_prbs", p.system_prbs);
  o.done();
  require(p.fc_ghz > 0.0, "channel.fc_ghz: must be > 0");
  require(p.los_always_height_m > 0.0, "channel.los_always_height_m: must be > 0");
  require(p.losprob_scale_m > 0.0, "channel.losprob_scale_m: must be > 0");
  require(p.pl_los_beta > 0.0 && p.pl_nlos_beta > 0.0, "channel.pl: beta must be > 0");
  require(p.sf_sigma_min_db <= p.sf_sigma0_db,
          "channel.sf_sigma_min_db: must be <= sf_sigma0_db");
  require(p.sf_sigma_min_db >= 0.0, "channel.sf_sigma_min_db: must be >= 0");
  require(p.sf_decorrelation_m > 0.0, "channel.sf_decorrelation_m: must be > 0");
  require(p.system_prbs >= 1, "channel.system_prbs: must be >= 1");
  return p;
}

MapExperiment parse_map(const json& j) {
  Obj o(j, "experiment.map");
  MapExperiment m;
  m.heights_m = o.num_list("heights_m", m.heights_m);
  m.extent_m = o.num("extent_m", m.extent_m);
  m.spacing_m = o.num("spacing_m", m.spacing_m);
  const std::string fading = o.str("fading", "off");
  if (fading == "off" || fading == "median") {
    m.fading = radio::FadingMode::Off;
  } else if (fading == "sampled") {
    m.fading = radio::FadingMode::Sampled;
  } else {
    throw ConfigError("experiment.map.fading: expected off|median|sampled");
  }
  m.center_only = o.boolean("center_only", m.center_only);
  o.done();
  require(!m.heights_m.empty(), "experiment.map.heights_m: at least one height required");
  for (double h : m.heights_m) require(h > 0.0, "experiment.map.heights_m: heights must be > 0");
  require(m.spacing_m > 0.0, "experiment.map.spacing_m: must be > 0");
  require(m.extent_m >= m.spacing_m, "experiment.map.extent_m: must be >= spacing_m");
  return m;
}

LatencyExperiment parse_latency(const json& j) {
  Obj o(j, "experiment.latency");
  LatencyExperiment l;
  l.heights_m = o.num_list("heights_m", l.heights_m);
  l.prb_pool = o.integer("prb_pool", l.prb_pool);
  l.duration_ms = o.num("duration_ms", l.duration_ms);
  l.ues_per_cell = o.integer("ues_per_cell", l.ues_per_cell);
  l.period_ms = o.num("period_ms", l.period_ms);
  l.packet_bytes = o.integer("packet_bytes", l.packet_bytes);
  l.latency_bound_ms = o.num("latency_bound_ms", l.latency_bound_ms);
  if (const json* la = o.take("link_adaptation")) {
    Obj lo(*la, "experiment.latency.link_adaptation");
    l.link_adaptation.efficiency_scale =
        lo.num("efficiency_scale", l.link_adaptation.efficiency_scale);
    l.link_adaptation.efficiency_cap_bps_hz =
        lo.num("efficiency_cap_bps_hz", l.link_adaptation.efficiency_cap_bps_hz);
    l.link_adaptation.min_sinr_db = lo.num("min_sinr_db", l.link_adaptation.min_sinr_db);
    lo.done();
  }
  l.min_drop_radius_m = o.num("min_drop_radius_m", l.min_drop_radius_m);
  l.center_only = o.boolean("center_only", l.center_only);
  o.done();
  require(!l.heights_m.empty(), "experiment.latency.heights_m: at least one height required");
  for (double h : l.heights_m) {
    require(h > 0.0, "experiment.latency.heights_m: heights must be > 0");
  }
  require(l.prb_pool >= 1, "experiment.latency.prb_pool: must be >= 1");
  require(l.period_ms > 0.0 && std::isfinite(l.period_ms),
          "experiment.latency.period_ms: must be > 0");
  require(l.duration_ms >= 10.0 * l.period_ms,
          "experiment.latency.duration_ms: must cover at least 10 traffic periods");
  require(l.ues_per_cell >= 0, "experiment.latency.ues_per_cell: must be >= 0");
  require(l.packet_bytes >= 1, "experiment.latency.packet_bytes: must be >= 1");
  require(l.latency_bound_ms > 0.0, "experiment.latency.latency_bound_ms: must be > 0");
  require(l.link_adaptation.efficiency_scale > 0.0,
          "experiment.latency.link_adaptation.efficiency_scale: must be > 0");
  require(l.link_adaptation.efficiency_cap_bps_hz > 0.0,
          "experiment.latency.link_adaptation.efficiency_cap_bps_hz: must be > 0");
  require(l.min_drop_radius_m >= 0.0,
          "experiment.latency.min_drop_radius_m: must be >= 0");
  return l;
}

RouteSpec parse_routes(const json& j) {
  Obj o(j, "experiment.mobility.routes");
  RouteSpec r;
  const std::string type = o.str("type", "waypoints");
  if (type == "waypoints") {
    r.type = RouteSpec::Type::Waypoints;
    const json* wp = o.take("waypoints");
    require(wp != nullptr, "experiment.mobility.routes.waypoints: required");
    require(wp->is_array() && wp->size() >= 2,
            "experiment.mobility.routes.waypoints: at least 2 [x,y] pairs required");
    for (const auto& e : *wp) {
      require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(),
              "experiment.mobility.routes.waypoints: entries must be [x,y] numbers");
      r.waypoints.push_back({e[0].get<double>(), e[1].get<double>()});
    }
  } else if (type == "random_straight") {
    r.type = RouteSpec::Type::RandomStraight;
    r.count = o.integer("count", r.count);
    r.length_m = o.num("length_m", r.length_m);
    r.midpoint_radius_m = o.num("midpoint_radius_m", r.midpoint_radius_m);
    require(r.count >= 1, "experiment.mobility.routes.count: must be >= 1");
    require(r.length_m > 0.0, "experiment.mobility.routes.length_m: must be > 0");
    require(r.midpoint_radius_m >= 0.0,
            "experiment.mobility.routes.midpoint_radius_m: must be >= 0");
  } else {
    throw ConfigError("experiment.mobility.routes.type: expected waypoints|random_straight");
  }
  o.done();
  return r;
}

MobilityExperiment parse_mobility(const json& j) {
  Obj o(j, "experiment.mobility");
  MobilityExperiment m;
  m.heights_m = o.num_list("heights_m", m.heights_m);
  m.speed_kmh = o.num("speed_kmh", m.speed_kmh);
  m.sample_dt_ms = o.num("sample_dt_ms", m.sample_dt_ms);
  const json* routes = o.take("routes");
  require(routes != nullptr, "experiment.mobility.routes: required");
  m.routes = parse_routes(*routes);
  if (const json* ho = o.take("handover")) {
    Obj h(*ho, "experiment.mobility.handover");
    m.handover.a3_offset_db = h.num("a3_offset_db", m.handover.a3_offset_db);
    m.handover.time_to_trigger_ms = h.num("time_to_trigger_ms", m.handover.time_to_trigger_ms);
    m.handover.l3_filter_k = h.integer("l3_filter_k", m.handover.l3_filter_k);
    m.handover.report_delay_ms = h.num("report_delay_ms", m.handover.report_delay_ms);
    m.handover.ho_command_delay_ms = h.num("ho_command_delay_ms", m.handover.ho_command_delay_ms);
    m.handover.ho_execution_ms = h.num("ho_execution_ms", m.handover.ho_execution_ms);
    m.handover.prohibit_ms = h.num("prohibit_ms", m.handover.prohibit_ms);
    h.done();
  }
  if (const json* tt = o.take("threshold_trigger")) {
    if (!tt->is_null()) {
      Obj t(*tt, "experiment.mobility.threshold_trigger");
      mobility::ThresholdTrigger trig;
      const std::string metric = t.str("metric", "rsrp");
      if (metric == "rsrp") {
        trig.metric = mobility::ThresholdTrigger::Metric::Rsrp;
      } else if (metric == "rsrq") {
        trig.metric = mobility::ThresholdTrigger::Metric::Rsrq;
      } else if (metric == "rs_sinr") {
        trig.metric = mobility::ThresholdTrigger::Metric::RsSinr;
      } else {
        throw ConfigError("experiment.mobility.threshold_trigger.metric: expected rsrp|rsrq|rs_sinr");
      }
      trig.threshold = t.num("threshold", trig.threshold);
      trig.n_cells = t.integer("n_cells", trig.n_cells);
      t.done();
      require(trig.n_cells >= 1, "experiment.mobility.threshold_trigger.n_cells: must be >= 1");
      m.handover.threshold_trigger = trig;
    }
  }
  if (const json* rc = o.take("rlf")) {
    Obj r(*rc, "experiment.mobility.rlf");
    m.rlf.qout_db = r.num("qout_db", m.rlf.qout_db);
    m.rlf.qin_db = r.num("qin_db", m.rlf.qin_db);
    m.rlf.t310_ms = r.num("t310_ms", m.rlf.t310_ms);
    m.rlf.reestablish_delay_ms = r.num("reestablish_delay_ms", m.rlf.reestablish_delay_ms);
    r.done();
  }
  m.interference_activity = o.num("interference_activity", m.interference_activity);
  m.trace_route = o.integer("trace_route", m.trace_route);
  o.done();
  require(!m.heights_m.empty(), "experiment.mobility.heights_m: at least one height required");
  for (double h : m.heights_m) {
    require(h > 0.0, "experiment.mobility.heights_m: heights must be > 0");
  }
  require(m.speed_kmh > 0.0, "experiment.mobility.speed_kmh: must be > 0");
  require(m.sample_dt_ms > 0.0, "experiment.mobility.sample_dt_ms: must be > 0");
  require(m.handover.a3_offset_db >= 0.0, "experiment.mobility.handover.a3_offset_db: must be >= 0");
  require(m.handover.time_to_trigger_ms >= 0.0,
          "experiment.mobility.handover.time_to_trigger_ms: must be >= 0");
  require(m.handover.l3_filter_k >= 0, "experiment.mobility.handover.l3_filter_k: must be >= 0");
  require(m.handover.report_delay_ms >= 0.0 && m.handover.ho_command_delay_ms >= 0.0 &&
              m.handover.ho_execution_ms >= 0.0 && m.handover.prohibit_ms >= 0.0,
          "experiment.mobility.handover: delays must be >= 0");
  require(m.rlf.qout_db < m.rlf.qin_db, "experiment.mobility.rlf: qout_db must be < qin_db");
  require(m.rlf.t310_ms > 0.0, "experiment.mobility.rlf.t310_ms: must be > 0");
  require(m.rlf.reestablish_delay_ms >= 0.0,
          "experiment.mobility.rlf.reestablish_delay_ms: must be >= 0");
  require(m.interference_activity >= 0.0 && m.interference_activity <= 1.0,
          "experiment.mobility.interference_activity: must lie in [0,1]");
  require(m.trace_route >= -1, "experiment.mobility.trace_route: must be >= -1");
  return m;
}

}  // namespace

Scenario load_scenario(const std::string& json_text) {
  json root_json;
  try {
    root_json = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  Obj root(root_json, "config");

  Scenario s;
  s.seed = root.u64("seed", s.seed);
  s.out_dir = root.str("out_dir", s.out_dir);
  if (const json* j = root.take("layout")) s.layout = parse_layout(*j);
  if (const json* j = root.take("antenna")) s.antenna = parse_antenna(*j);
  if (const json* j = root.take("channel")) s.channel = parse_channel(*j);

  const json* exp = root.take("experiment");
  require(exp != nullptr, "experiment: missing experiment block (one of map/latency/mobility)");
  Obj eo(*exp, "experiment");
  int blocks = 0;
  if (const json* j = eo.take("map")) {
    s.experiment = parse_map(*j);
    ++blocks;
  }
  if (const json* j = eo.take("latency")) {
    s.experiment = parse_latency(*j);
    ++blocks;
  }
  if (const json* j = eo.take("mobility")) {
    s.experiment = parse_mobility(*j);
    ++blocks;
  }
  eo.done();
  require(blocks == 1, "experiment: exactly one of map/latency/mobility must be present");
  root.done();

  // Cross-block constraints.
  if (const auto* lat = std::get_if<LatencyExperiment>(&s.experiment)) {
    require(lat->prb_pool <= s.channel.system_prbs,
            "experiment.latency.prb_pool: must be <= channel.system_prbs");
    require(lat->min_drop_radius_m < s.layout.isd_m / std::sqrt(3.0),
            "experiment.latency.min_drop_radius_m: must be < isd/sqrt(3)");
  }
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize(const Scenario& s) {
  ordered_json root;
  root["seed"] = s.seed;
  root["out_dir"] = s.out_dir;
  root["layout"] = {{"isd_m", s.layout.isd_m},
                    {"rings", s.layout.rings},
                    {"bs_height_m", s.layout.bs_height_m},
                    {"wraparound", s.layout.wraparound},
                    {"bearings_deg", s.layout.bearings_deg},
                    {"tx_power_dbm", s.layout.tx_power_dbm}};
  root["antenna"] = {{"gmax_dbi", s.antenna.element.gmax_dbi},
                     {"hpbw_az_deg", s.antenna.element.hpbw_az_deg},
                     {"hpbw_el_deg", s.antenna.element.hpbw_el_deg},
                     {"front_back_db", s.antenna.element.front_back_db},
                     {"sla_db", s.antenna.element.sla_db},
                     {"m_elements", s.antenna.array.m_elements},
                     {"spacing_wl", s.antenna.array.spacing_wl},
                     {"downtilt_deg", s.antenna.array.downtilt_deg}};
  root["channel"] = {{"fc_ghz", s.channel.fc_ghz},
                     {"los_always_height_m", s.channel.los_always_height_m},
                     {"losprob_scale_m", s.channel.losprob_scale_m},
                     {"pl_los_alpha_db", s.channel.pl_los_alpha_db},
                     {"pl_los_beta", s.channel.pl_los_beta},
                     {"pl_nlos_alpha_db", s.channel.pl_nlos_alpha_db},
                     {"pl_nlos_beta", s.channel.pl_nlos_beta},
                     {"sf_sigma0_db", s.channel.sf_sigma0_db},
                     {"sf_decay_per_m", s.channel.sf_decay_per_m},
                     {"sf_sigma_min_db", s.channel.sf_sigma_min_db},
                     {"sf_decorrelation_m", s.channel.sf_decorrelation_m},
                     {"noise_figure_db", s.channel.noise_figure_db},
                     {"system_prbs", s.channel.system_prbs}};

  ordered_json exp;
  if (const auto* m = std::get_if<MapExperiment>(&s.experiment)) {
    exp["map"] = {{"heights_m", m->heights_m},
                  {"extent_m", m->extent_m},
                  {"spacing_m", m->spacing_m},
                  {"fading", m->fading == radio::FadingMode::Off ? "off" : "sampled"},
                  {"center_only", m->center_only}};
  } else if (const auto* l = std::get_if<LatencyExperiment>(&s.experiment)) {
    exp["latency"] = {{"heights_m", l->heights_m},
                      {"prb_pool", l->prb_pool},
                      {"duration_ms", l->duration_ms},
                      {"ues_per_cell", l->ues_per_cell},
                      {"period_ms", l->period_ms},
                      {"packet_bytes", l->packet_bytes},
                      {"latency_bound_ms", l->latency_bound_ms},
                      {"link_adaptation",
                       {{"efficiency_scale", l->link_adaptation.efficiency_scale},
                        {"efficiency_cap_bps_hz", l->link_adaptation.efficiency_cap_bps_hz},
                        {"min_sinr_db", l->link_adaptation.min_sinr_db}}},
                      {"min_drop_radius_m", l->min_drop_radius_m},
                      {"center_only", l->center_only}};
  } else if (const auto* m = std::get_if<MobilityExperiment>(&s.experiment)) {
    ordered_json routes;
    if (m->routes.type == RouteSpec::Type::Waypoints) {
      routes["type"] = "waypoints";
      ordered_json wps = ordered_json::array();
      for (const auto& w : m->routes.waypoints) wps.push_back({w.x, w.y});
      routes["waypoints"] = wps;
    } else {
      routes["type"] = "random_straight";
      routes["count"] = m->routes.count;
      routes["length_m"] = m->routes.length_m;
      routes["midpoint_radius_m"] = m->routes.midpoint_radius_m;
    }
    ordered_json mob = {{"heights_m", m->heights_m},
                        {"speed_kmh", m->speed_kmh},
                        {"sample_dt_ms", m->sample_dt_ms},
                        {"routes", routes},
                        {"handover",
                         {{"a3_offset_db", m->handover.a3_offset_db},
                          {"time_to_trigger_ms", m->handover.time_to_trigger_ms},
                          {"l3_filter_k", m->handover.l3_filter_k},
                          {"report_delay_ms", m->handover.report_delay_ms},
                          {"ho_command_delay_ms", m->handover.ho_command_delay_ms},
                          {"ho_execution_ms", m->handover.ho_execution_ms},
                          {"prohibit_ms", m->handover.prohibit_ms}}},
                        {"rlf",
                         {{"qout_db", m->rlf.qout_db},
                          {"qin_db", m->rlf.qin_db},
                          {"t310_ms", m->rlf.t310_ms},
                          {"reestablish_delay_ms", m->rlf.reestablish_delay_ms}}},
                        {"interference_activity", m->interference_activity},
                        {"trace_route", m->trace_route}};
    if (m->handover.threshold_trigger) {
      const auto& trig = *m->handover.threshold_trigger;
      const char* metric = trig.metric == mobility::ThresholdTrigger::Metric::Rsrp ? "rsrp"
                           : trig.metric == mobility::ThresholdTrigger::Metric::Rsrq
                               ? "rsrq"
                               : "rs_sinr";
      mob["threshold_trigger"] = {{"metric", metric},
                                  {"threshold", trig.threshold},
                                  {"n_cells", trig.n_cells}};
    }
    exp["mobility"] = mob;
  }
  root["experiment"] = exp;
  return root.dump(2) + "\n";
}

radio::Scene build_scene(const Scenario& s) {
  radio::Scene scene;
  scene.layout = deployment::build_hex_layout(s.layout.isd_m, s.layout.rings, s.layout.bs_height_m);
  scene.layout.wraparound = s.layout.wraparound;
  scene.cells = deployment::sectorize(scene.layout, s.layout.bearings_deg, s.layout.tx_power_dbm);
  scene.pattern = s.antenna;
  scene.channel = s.channel;
  return scene;
}

std::vector<mobility::Trajectory> build_routes(const Scenario& scenario,
                                               const MobilityExperiment& mob,
                                               double height_m) {
  std::vector<mobility::Trajectory> routes;
  const double speed_mps = mob.speed_kmh / 3.6;
  if (mob.routes.type == RouteSpec::Type::Waypoints) {
    routes.push_back({mob.routes.waypoints, speed_mps, height_m, mob.sample_dt_ms});
    return routes;
  }
  routes.reserve(static_cast<std::size_t>(mob.routes.count));
  for (int r = 0; r < mob.routes.count; ++r) {
    auto stream = rng::derive_stream(scenario.seed, rng::Purpose::RouteGeometry,
                                     static_cast<std::uint64_t>(r));
    const double radius = mob.routes.midpoint_radius_m * std::sqrt(stream.uniform());
    const double at = stream.uniform(0.0, 2.0 * kPi);
    const Vec2 mid{radius * std::cos(at), radius * std::sin(at)};
    const double dir = stream.uniform(0.0, 2.0 * kPi);
    const Vec2 half{0.5 * mob.routes.length_m * std::cos(dir),
                    0.5 * mob.routes.length_m * std::sin(dir)};
    routes.push_back({{mid - half, mid + half}, speed_mps, height_m, mob.sample_dt_ms});
  }
  return routes;
}

}  // namespace aeronet::config
