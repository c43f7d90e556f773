#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "poloc/detection/exclusion.hpp"
#include "poloc/errors.hpp"
#include "poloc/pow/target_table.hpp"
#include "poloc/sim/network.hpp"

namespace poloc::sim {

enum class PowMode { analytic, hashing, disabled };
enum class ForgedDistribution { uniform, poisson };

std::string_view to_string(PowMode m);
PowMode parse_pow_mode(std::string_view s);
std::string_view to_string(ForgedDistribution d);
ForgedDistribution parse_forged_distribution(std::string_view s);

struct ScenarioConfig {
  std::size_t vehicle_count = 160;
  double malicious_fraction = 0.10;

  // Forged trajectories per attacker: uniform integer in [forged_min,
  // forged_max], or Poisson(forged_mean) truncated at forged_cap.
  ForgedDistribution forged_distribution = ForgedDistribution::uniform;
  std::size_t forged_min = 1;
  std::size_t forged_max = 10;
  double forged_mean = 10;
  std::size_t forged_cap = 40;
  // Forged trajectories are contiguous pieces of the attacker's route with a
  // random start hop and length in [forged_min_length, route length - 1].
  // With jitter off every forged trajectory copies the whole route.
  bool forged_jitter = true;
  std::size_t forged_min_length = 2;

  std::size_t trajectory_length_min = 10;  // RSU entries
  std::size_t trajectory_length_max = 15;
  double traverse_time_min = 10;  // seconds between consecutive RSUs
  double traverse_time_max = 130;
  double start_window = 5;  // seconds

  std::size_t threshold_t = 3;
  double operating_rate = 0.98;
  double hash_rate = 3.5e6 / 90.0;  // hashes per second
  unsigned output_bits = pow::kFullOutputBits;
  double table_time_min = 10;
  double table_time_max = 130;
  double table_time_step = 10;
  PowMode pow_mode = PowMode::analytic;

  double check_window = 17;
  std::size_t length_limit = 15;
  double similarity_threshold = 0;

  std::size_t rsu_count = 100;
  Topology topology = Topology::grid;
  // Run the RSU and vehicle state machines (signatures, shares, session
  // checks). Off: entries are produced directly with identical content.
  bool drive_protocol = true;

  std::uint64_t rng_seed = 1;
  std::size_t repetitions = 30;

  void validate() const;  // throws InvalidArgument
  detection::DetectionParams detection() const;
  std::vector<double> table_times() const;
  pow::TargetTable target_table() const;  // analytic, at the operating rate
};

// JSON with keys named exactly as the fields above (enums as strings).
// Unknown keys or wrong types raise ConfigError listing every offending key.
struct ConfigError : InvalidArgument {
  std::vector<std::string> keys;
  ConfigError(const std::string& what, std::vector<std::string> k)
      : InvalidArgument(what), keys(std::move(k)) {}
};

ScenarioConfig config_from_json(std::string_view text, ScenarioConfig base = {});
std::string config_to_json(const ScenarioConfig& cfg);  // canonical, sorted keys
std::string config_hash(const ScenarioConfig& cfg);     // SHA-256 hex of the canonical JSON

}  // namespace poloc::sim
