#include <iostream>
#include <memory>
#include <optional>

#include "common.hpp"
#include "json.hpp"
#include "poloc/io/trajectory_json.hpp"
#include "poloc/sim/sweep.hpp"

namespace poloc::cli {

namespace {

struct RunOptions {
  std::string config;
  std::string out;
  std::string scheme = "both";
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> repetitions;
  std::optional<std::size_t> vehicles;
  std::optional<double> window;
  std::optional<std::size_t> limit;
  std::optional<std::size_t> threshold;
  std::optional<double> rate;
  std::optional<std::size_t> rsus;
  std::optional<std::string> topology;
  bool no_protocol = false;
  // sweep only
  std::string axis = "all";
  std::string values;
};

void add_common(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("-c,--config", o.config, "Scenario config JSON (keys as in ScenarioConfig)");
  cmd->add_option("-o,--out", o.out, "Output directory")->required();
  cmd->add_option("--scheme", o.scheme, "pow, disabled or both")
      ->check(CLI::IsMember({"pow", "disabled", "both"}))
      ->capture_default_str();
  cmd->add_option("-j,--jobs", o.jobs, "Worker threads for repetitions")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Overrides rng_seed");
  cmd->add_option("--reps", o.repetitions, "Overrides repetitions");
  cmd->add_option("--vehicles", o.vehicles, "Overrides vehicle_count");
  cmd->add_option("--window", o.window, "Overrides check_window (seconds)");
  cmd->add_option("--limit", o.limit, "Overrides length_limit");
  cmd->add_option("--threshold", o.threshold, "Overrides threshold_t");
  cmd->add_option("--rate", o.rate, "Overrides operating_rate");
  cmd->add_option("--rsus", o.rsus, "Overrides rsu_count");
  cmd->add_option("--topology", o.topology, "Overrides topology");
  cmd->add_flag("--no-protocol", o.no_protocol, "Skip the RSU/vehicle state machines (drive_protocol=false)");
}

sim::ScenarioConfig load_config(const RunOptions& o) {
  sim::ScenarioConfig cfg;
  if (!o.config.empty()) {
    try {
      cfg = sim::config_from_json(read_text_file(o.config));
    } catch (const sim::ConfigError& e) {
      throw UsageError(o.config + ": " + e.what());
    }
  }
  if (o.seed) cfg.rng_seed = *o.seed;
  if (o.repetitions) cfg.repetitions = *o.repetitions;
  if (o.vehicles) cfg.vehicle_count = *o.vehicles;
  if (o.window) cfg.check_window = *o.window;
  if (o.limit) cfg.length_limit = *o.limit;
  if (o.threshold) cfg.threshold_t = *o.threshold;
  if (o.rate) cfg.operating_rate = *o.rate;
  if (o.rsus) cfg.rsu_count = *o.rsus;
  if (o.topology) cfg.topology = sim::parse_topology(*o.topology);
  if (o.no_protocol) cfg.drive_protocol = false;
  cfg.validate();
  return cfg;
}

std::vector<sim::PowMode> schemes_for(const RunOptions& o, const sim::ScenarioConfig& cfg) {
  const auto pow_mode = cfg.pow_mode == sim::PowMode::disabled ? sim::PowMode::analytic : cfg.pow_mode;
  if (o.scheme == "pow") return {pow_mode};
  if (o.scheme == "disabled") return {sim::PowMode::disabled};
  return {pow_mode, sim::PowMode::disabled};
}

void write_manifest(const std::filesystem::path& dir, const sim::ScenarioConfig& cfg,
                    const std::vector<sim::PowMode>& schemes, const std::vector<std::string>& outputs,
                    nlohmann::json extra = nlohmann::json::object()) {
  nlohmann::json m = extra;
  m["command"] = command_line();
  m["code_version"] = POLOC_VERSION;
  m["seed"] = cfg.rng_seed;
  m["config_hash"] = sim::config_hash(cfg);
  m["config"] = nlohmann::json::parse(sim::config_to_json(cfg));
  nlohmann::json s = nlohmann::json::array();
  for (auto mode : schemes) s.push_back(std::string(sim::to_string(mode)));
  m["schemes"] = s;
  m["outputs"] = outputs;
  write_output(dir / "manifest.json", m.dump(2) + "\n");
}

void run_simulate(const RunOptions& o) {
  const auto base = load_config(o);
  const auto schemes = schemes_for(o, base);
  const std::filesystem::path dir(o.out);
  std::vector<std::pair<sim::PowMode, sim::ScenarioResult>> results;
  std::vector<std::string> outputs{"summary.csv", "summary_timing.csv", "histogram.csv"};
  std::string timing = "scheme,detect_ms,detect_ms_std,repetitions\n";
  for (auto mode : schemes) {
    auto cfg = base;
    cfg.pow_mode = mode;
    const auto run = sim::run_scenario(cfg, o.jobs);
    results.emplace_back(mode, run.result);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%zu\n", std::string(sim::to_string(mode)).c_str(),
                  run.result.detect_ms.mean, run.result.detect_ms.stddev, run.result.repetitions);
    timing += buf;
    const std::string name = "trajectories_" + std::string(sim::to_string(mode)) + ".json";
    write_output(dir / name, io::trajectories_to_json(run.trajectories, crypto::GroupParams::default_256(),
                                                      &run.truth.labels));
    outputs.push_back(name);
    std::cout << sim::to_string(mode) << ": FPR " << run.result.fpr.mean << " FNR " << run.result.fnr.mean
              << " DR " << run.result.dr.mean << " detect " << run.result.detect_ms.mean << " ms over "
              << run.result.repetitions << " repetitions\n";
  }
  write_output(dir / "summary.csv", sim::summary_csv(results));
  write_output(dir / "summary_timing.csv", timing);
  write_output(dir / "histogram.csv", sim::histogram_csv(results));
  write_manifest(dir, base, schemes, outputs);
}

void run_sweep_cmd(const RunOptions& o) {
  const auto base = load_config(o);
  const auto schemes = schemes_for(o, base);
  std::vector<sim::SweepAxis> axes;
  if (o.axis == "all") {
    axes = {sim::SweepAxis::check_window, sim::SweepAxis::length_limit, sim::SweepAxis::forged_count};
  } else {
    axes = {sim::parse_axis(o.axis)};
  }
  if (!o.values.empty() && axes.size() != 1) throw UsageError("--values needs a single --axis");
  const std::filesystem::path dir(o.out);
  std::vector<std::string> outputs;
  for (auto axis : axes) {
    const auto values = o.values.empty() ? sim::default_axis_values(axis) : parse_grid(o.values);
    const auto table = sim::run_sweep(base, axis, values, schemes, o.jobs);
    const std::string stem = "sweep_" + std::string(sim::to_string(axis));
    write_output(dir / (stem + ".csv"), sim::sweep_csv(table));
    write_output(dir / (stem + "_timing.csv"), sim::sweep_timing_csv(table));
    outputs.push_back(stem + ".csv");
    outputs.push_back(stem + "_timing.csv");
    std::cout << "wrote " << (dir / (stem + ".csv")).string() << " (" << table.rows.size() << " rows)\n";
  }
  nlohmann::json extra;
  nlohmann::json ax = nlohmann::json::array();
  for (auto a : axes) ax.push_back(std::string(sim::to_string(a)));
  extra["axes"] = ax;
  write_manifest(dir, base, schemes, outputs, extra);
}

}  // namespace

void add_simulate(CLI::App& app) {
  auto o = std::make_shared<RunOptions>();
  auto* cmd = app.add_subcommand("simulate", "Run a scenario and write summary CSVs and a manifest");
  add_common(cmd, *o);
  cmd->callback([o] { run_simulate(*o); });
}

void add_sweep(CLI::App& app) {
  auto o = std::make_shared<RunOptions>();
  auto* cmd = app.add_subcommand("sweep", "Sweep check window, length limit or forged count");
  add_common(cmd, *o);
  cmd->add_option("--axis", o->axis, "check_window, length_limit, forged_count or all")
      ->check(CLI::IsMember({"check_window", "length_limit", "forged_count", "all"}))
      ->capture_default_str();
  cmd->add_option("--values", o->values, "Axis values: start:stop:step or a comma list");
  cmd->callback([o] { run_sweep_cmd(*o); });
}

}  // namespace poloc::cli
