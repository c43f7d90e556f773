#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "poloc/detection/eliminate.hpp"
#include "poloc/protocol/authority.hpp"
#include "poloc/sim/config.hpp"
#include "poloc/sim/stats.hpp"

namespace poloc::sim {

using detection::Label;
using protocol::Trajectory;

// Independent generator for one purpose within one repetition, so that e.g.
// PoW draws never shift the route draws.
enum class Stream : std::uint64_t { network = 1, population, pow, crypto, order, keys };
std::mt19937_64 make_stream(std::uint64_t seed, Stream stream);

std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t repetition);

struct Route {
  std::vector<RsuId> rsus;
  double traverse_time = 0;  // constant per vehicle
  double start_time = 0;
  std::vector<std::uint32_t> timestamps;  // floor(start + k * traverse_time)
};

// Random walk along network adjacency that does not step straight back
// unless the current RSU is a dead end.
Route generate_route(const RoadNetwork& net, std::size_t length, const ScenarioConfig& cfg,
                     std::mt19937_64& rng);
std::vector<Route> generate_routes(const RoadNetwork& net, const ScenarioConfig& cfg,
                                   std::mt19937_64& rng);

struct ForgedPlan {
  std::size_t start_hop = 0;
  std::size_t length = 0;
};

struct VehiclePlan {
  bool malicious = false;
  Route route;
  std::vector<ForgedPlan> forged;
};

struct Population {
  std::vector<VehiclePlan> vehicles;
  std::size_t attackers() const;
  std::size_t forged_total() const;
};

Population generate_population(const RoadNetwork& net, const ScenarioConfig& cfg,
                               std::mt19937_64& rng);

struct GroundTruth {
  std::vector<Label> labels;       // per submitted trajectory
  std::vector<std::size_t> owner;  // vehicle index
};

// Everything that is fixed for a scenario seed: the road network, the target
// table and (when the protocol is driven) the dealt group keys.
struct Environment {
  ScenarioConfig config;
  RoadNetwork network;
  pow::TargetTable table;
  std::shared_ptr<const protocol::TrustedAuthority> authority;  // null unless drive_protocol

  static Environment create(const ScenarioConfig& cfg);
};

struct AttackerOutcome {
  std::size_t vehicle = 0;
  std::size_t attempted = 0;        // forged trajectories planned
  std::size_t surviving = 0;        // forged trajectories submitted
  bool actual_intact = false;       // actual trajectory never restarted
};

struct Formation {
  std::vector<Trajectory> trajectories;  // submission order (shuffled)
  GroundTruth truth;
  std::vector<AttackerOutcome> attackers;
  std::size_t honest_vehicles = 0;
  std::size_t honest_intact = 0;     // honest vehicles that never had to restart
  std::size_t forged_attempted = 0;
  std::size_t forged_blocked = 0;    // stopped by PoW, never submitted
  std::size_t pow_gates = 0;         // (vehicle, hop) pairs where PoW was required
  std::size_t survivor_excess = 0;   // gates where survivors exceeded solutions; always 0
  std::size_t protocol_failures = 0; // unexpected RSU rejections or unverifiable output
};

// Drives every vehicle's sessions along its route under `mode`. Attackers
// give PoW solutions to the actual trajectory first, then to forged ones in
// index order; sessions without a solution at a hop are dropped (forged) or
// restarted at the current RSU (actual or honest).
Formation form_trajectories(const Environment& env, const Population& population, PowMode mode,
                            std::uint64_t rep_seed);

struct RepetitionMetrics {
  detection::ClassificationCounts scheme;    // blocked forged trajectories count as detected
  detection::ClassificationCounts detector;  // submitted trajectories only
  double detect_ms = 0;
  std::uint64_t detect_work = 0;
  std::size_t trajectories = 0;
  std::size_t forged_submitted = 0;
  double honest_completion = 0;
};

RepetitionMetrics evaluate(const Formation& formation, const detection::DetectionParams& params,
                           detection::DetectionRun* run_out = nullptr);

struct ScenarioResult {
  std::size_t repetitions = 0;
  MetricSummary fpr, fnr, dr;
  MetricSummary detector_fnr;
  MetricSummary detect_ms, detect_work;
  MetricSummary trajectories, forged_submitted, honest_completion;
  std::map<std::size_t, std::size_t> surviving_forged_histogram;  // surviving count -> attackers

  static ScenarioResult aggregate(const std::vector<RepetitionMetrics>& reps,
                                  const std::vector<std::vector<AttackerOutcome>>& attackers);
};

struct ScenarioRun {
  ScenarioResult result;
  std::vector<RepetitionMetrics> repetitions;
  // Repetition 0, kept for inspection and export.
  std::vector<Trajectory> trajectories;
  GroundTruth truth;
};

// Runs cfg.repetitions repetitions (seed rng_seed ^ index) on up to `jobs`
// threads; results do not depend on `jobs`.
ScenarioRun run_scenario(const ScenarioConfig& cfg, std::size_t jobs = 1);

// Calls fn(index) for index in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace poloc::sim
