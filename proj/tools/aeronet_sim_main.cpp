// SPDX-License-Identifier: Apache-2.0
//
// aeronet-sim: coverage maps, downlink command-and-control latency and
// mobility simulations for drone UEs on a hexagonal LTE deployment.
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aeronet/error.hpp"
#include "aeronet/runner.hpp"
#include "aeronet/scenario.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<double> height;
  std::optional<int> prbs;
  bool center_only = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config_path, "Scenario config file (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--seed", args.seed, "Override the scenario seed");
  cmd->add_option("--out-dir", args.out_dir, "Override the output directory");
  cmd->add_option("--height", args.height, "Run a single height (meters)");
  cmd->add_option("--prbs", args.prbs, "Override the latency PRB pool size");
  cmd->add_flag("--center-only", args.center_only,
                "Restrict statistics to the center site's cells");
}

aeronet::config::Scenario load_with_overrides(const CommonArgs& args,
                                              const char* expected_block) {
  using namespace aeronet::config;
  Scenario scn;
  if (!args.config_path.empty()) {
    scn = load_scenario_file(args.config_path);
  } else {
    // Defaults with a minimal experiment block for pattern-dump.
    scn.experiment = MapExperiment{};
  }
  if (args.seed) scn.seed = *args.seed;
  if (args.out_dir) scn.out_dir = *args.out_dir;

  if (auto* map = std::get_if<MapExperiment>(&scn.experiment)) {
    if (args.height) map->heights_m = {*args.height};
    if (args.center_only) map->center_only = true;
    if (std::string("map") != expected_block) {
      throw aeronet::ConfigError(std::string("config holds a map experiment; run the map "
                                             "subcommand"));
    }
  } else if (auto* lat = std::get_if<LatencyExperiment>(&scn.experiment)) {
    if (args.height) lat->heights_m = {*args.height};
    if (args.prbs) lat->prb_pool = *args.prbs;
    if (args.center_only) lat->center_only = true;
    if (std::string("latency") != expected_block) {
      throw aeronet::ConfigError(std::string("config holds a latency experiment; run the "
                                             "latency subcommand"));
    }
  } else if (auto* mob = std::get_if<MobilityExperiment>(&scn.experiment)) {
    if (args.height) mob->heights_m = {*args.height};
    if (std::string("mobility") != expected_block) {
      throw aeronet::ConfigError(std::string("config holds a mobility experiment; run the "
                                             "mobility subcommand"));
    }
  }
  return scn;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aeronet-sim: system-level simulator of cellular connectivity for drone UEs"};
  app.require_subcommand(1);

  CommonArgs map_args, latency_args, mobility_args, pattern_args;
  auto* map_cmd = app.add_subcommand("map", "Cell association / coverage maps");
  add_common(map_cmd, map_args, true);
  auto* latency_cmd = app.add_subcommand("latency", "TTI-level downlink latency simulation");
  add_common(latency_cmd, latency_args, true);
  auto* mobility_cmd = app.add_subcommand("mobility", "Trajectory, handover and RLF simulation");
  add_common(mobility_cmd, mobility_args, true);
  auto* pattern_cmd = app.add_subcommand("pattern-dump", "Dump the composite antenna pattern");
  add_common(pattern_cmd, pattern_args, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (map_cmd->parsed()) {
      aeronet::config::run_scenario(load_with_overrides(map_args, "map"), std::cout);
    } else if (latency_cmd->parsed()) {
      aeronet::config::run_scenario(load_with_overrides(latency_args, "latency"), std::cout);
    } else if (mobility_cmd->parsed()) {
      aeronet::config::run_scenario(load_with_overrides(mobility_args, "mobility"), std::cout);
    } else if (pattern_cmd->parsed()) {
      aeronet::config::Scenario scn;
      if (!pattern_args.config_path.empty()) {
        scn = aeronet::config::load_scenario_file(pattern_args.config_path);
      } else {
        scn.experiment = aeronet::config::MapExperiment{};
      }
      if (pattern_args.seed) scn.seed = *pattern_args.seed;
      if (pattern_args.out_dir) scn.out_dir = *pattern_args.out_dir;
      aeronet::config::write_pattern_dump(scn, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
