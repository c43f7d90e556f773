#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "json.hpp"
#include "poloc/pow/poisson.hpp"
#include "poloc/sim/sweep.hpp"

using namespace poloc;
using namespace poloc::sim;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.vehicle_count = 30;
  c.rsu_count = 25;
  c.repetitions = 3;
  c.drive_protocol = false;
  return c;
}

}  // namespace

TEST(Network, Topologies) {
  std::mt19937_64 rng(1);
  auto line = generate_network(5, Topology::line, rng);
  EXPECT_EQ(line.neighbors(1), (std::vector<RsuId>{2}));
  EXPECT_EQ(line.neighbors(3), (std::vector<RsuId>{2, 4}));
  auto grid = generate_network(10, Topology::grid, rng);
  ASSERT_EQ(grid.size(), 10u);
  // 4 columns: node 6 sits in row 1, column 1.
  EXPECT_EQ(grid.neighbors(6), (std::vector<RsuId>{2, 5, 7, 10}));
  EXPECT_TRUE(grid.connected());
  for (std::size_t n : {10u, 50u, 100u}) {
    auto rg = generate_network(n, Topology::random_geometric, rng);
    EXPECT_EQ(rg.size(), n);
    EXPECT_TRUE(rg.connected());
    for (RsuId id = 1; id <= n; ++id)
      for (RsuId nb : rg.neighbors(id)) {
        const auto& back = rg.neighbors(nb);
        EXPECT_TRUE(std::binary_search(back.begin(), back.end(), id));
      }
  }
  EXPECT_THROW(generate_network(1, Topology::line, rng), InvalidArgument);
  EXPECT_THROW(parse_topology("ring"), InvalidArgument);
  EXPECT_EQ(parse_topology(to_string(Topology::random_geometric)), Topology::random_geometric);
}

TEST(Routes, RangesAndAdjacency) {
  ScenarioConfig cfg;
  std::mt19937_64 rng(2);
  auto net = generate_network(cfg.rsu_count, cfg.topology, rng);
  for (int i = 0; i < 500; ++i) {
    auto r = generate_route(net, cfg.trajectory_length_min + i % 6, cfg, rng);
    ASSERT_GE(r.rsus.size(), 10u);
    ASSERT_LE(r.rsus.size(), 15u);
    ASSERT_EQ(r.timestamps.size(), r.rsus.size());
    ASSERT_GE(r.traverse_time, 10.0);
    ASSERT_LE(r.traverse_time, 130.0);
    ASSERT_GE(r.start_time, 0.0);
    ASSERT_LT(r.start_time, 5.0);
    for (std::size_t k = 1; k < r.rsus.size(); ++k) {
      const auto& nb = net.neighbors(r.rsus[k - 1]);
      ASSERT_TRUE(std::binary_search(nb.begin(), nb.end(), r.rsus[k]));
      std::uint32_t dt = r.timestamps[k] - r.timestamps[k - 1];
      ASSERT_GE(dt, 10u);
      ASSERT_LE(dt, 130u);
      ASSERT_EQ(r.timestamps[k], static_cast<std::uint32_t>(std::floor(r.start_time + k * r.traverse_time)));
      if (k >= 2 && net.neighbors(r.rsus[k - 1]).size() > 1) { ASSERT_NE(r.rsus[k], r.rsus[k - 2]); }
    }
  }
}

TEST(Population, AttackersAndForgedPlans) {
  ScenarioConfig cfg;
  std::mt19937_64 rng(3);
  auto net = generate_network(cfg.rsu_count, cfg.topology, rng);
  auto pop = generate_population(net, cfg, rng);
  EXPECT_EQ(pop.vehicles.size(), 160u);
  EXPECT_EQ(pop.attackers(), 16u);
  for (const auto& v : pop.vehicles) {
    if (!v.malicious) {
      EXPECT_TRUE(v.forged.empty());
      continue;
    }
    EXPECT_GE(v.forged.size(), 1u);
    EXPECT_LE(v.forged.size(), 10u);
    const std::size_t l = v.route.rsus.size();
    for (const auto& f : v.forged) {
      EXPECT_GE(f.length, 2u);
      EXPECT_LE(f.length, l - 1);
      EXPECT_LE(f.start_hop + f.length, l);
    }
  }
  cfg.forged_jitter = false;
  cfg.forged_distribution = ForgedDistribution::poisson;
  cfg.forged_mean = 3;
  cfg.forged_cap = 4;
  auto full = generate_population(net, cfg, rng);
  for (const auto& v : full.vehicles) {
    EXPECT_LE(v.forged.size(), 4u);
    for (const auto& f : v.forged) {
      EXPECT_EQ(f.start_hop, 0u);
      EXPECT_EQ(f.length, v.route.rsus.size());
    }
  }
}

TEST(Scenario, DeterministicAcrossJobCounts) {
  auto cfg = small_config();
  auto a = run_scenario(cfg, 1);
  auto b = run_scenario(cfg, 3);
  auto c = run_scenario(cfg, 1);
  auto row = [](const ScenarioRun& r) { return summary_csv({{PowMode::analytic, r.result}}); };
  EXPECT_EQ(row(a), row(b));
  EXPECT_EQ(row(a), row(c));
  ASSERT_EQ(a.repetitions.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.repetitions[i].detect_work, b.repetitions[i].detect_work);
  EXPECT_EQ(a.trajectories.size(), a.truth.labels.size());
  cfg.rng_seed = 2;
  EXPECT_NE(row(run_scenario(cfg)), row(a));
}

TEST(Scenario, ProtocolDrivenOutputVerifies) {
  auto cfg = small_config();
  cfg.vehicle_count = 12;
  cfg.repetitions = 1;
  cfg.drive_protocol = true;
  auto env = Environment::create(cfg);
  ASSERT_TRUE(env.authority);
  auto pop_rng = make_stream(cfg.rng_seed, Stream::population);
  auto pop = generate_population(env.network, cfg, pop_rng);
  auto f = form_trajectories(env, pop, PowMode::analytic, cfg.rng_seed);
  EXPECT_EQ(f.protocol_failures, 0u);
  EXPECT_EQ(f.survivor_excess, 0u);
  for (const auto& t : f.trajectories) {
    EXPECT_TRUE(protocol::verify_trajectory(env.authority->params(),
                                            env.authority->keys().group_public_key, t));
    EXPECT_EQ(t.proofs.size(), t.length() >= cfg.threshold_t ? t.length() - cfg.threshold_t + 1 : 0);
  }
  // Submission ids do not reveal the vehicle order.
  std::set<std::string> ids;
  for (const auto& t : f.trajectories) ids.insert(t.id);
  EXPECT_EQ(ids.size(), f.trajectories.size());

  // Same population without the state machines gives the same entries' timing.
  cfg.drive_protocol = false;
  auto plain_env = Environment::create(cfg);
  auto g = form_trajectories(plain_env, pop, PowMode::analytic, cfg.rng_seed);
  ASSERT_EQ(g.trajectories.size(), f.trajectories.size());
  for (std::size_t i = 0; i < g.trajectories.size(); ++i) {
    ASSERT_EQ(g.trajectories[i].length(), f.trajectories[i].length());
    for (std::size_t k = 0; k < g.trajectories[i].length(); ++k)
      EXPECT_EQ(g.trajectories[i].entries[k].timestamp, f.trajectories[i].entries[k].timestamp);
  }
}

TEST(Scenario, HashingModeRunsTheRealPuzzle) {
  auto cfg = small_config();
  cfg.vehicle_count = 6;
  cfg.malicious_fraction = 0.5;
  cfg.forged_min = cfg.forged_max = 2;
  cfg.trajectory_length_min = cfg.trajectory_length_max = 4;
  cfg.output_bits = 24;
  cfg.hash_rate = 5;
  cfg.pow_mode = PowMode::hashing;
  cfg.drive_protocol = true;
  cfg.repetitions = 1;
  auto env = Environment::create(cfg);
  auto pop_rng = make_stream(cfg.rng_seed, Stream::population);
  auto pop = generate_population(env.network, cfg, pop_rng);
  auto f = form_trajectories(env, pop, PowMode::hashing, cfg.rng_seed);
  EXPECT_EQ(f.protocol_failures, 0u);
  EXPECT_GT(f.pow_gates, 0u);
  for (const auto& a : f.attackers) EXPECT_LE(a.surviving, a.attempted);
}

TEST(Scenario, HonestCompletionFollowsOperatingRate) {
  ScenarioConfig cfg;
  cfg.malicious_fraction = 0;
  cfg.vehicle_count = 100;
  cfg.trajectory_length_min = cfg.trajectory_length_max = 11;
  cfg.drive_protocol = false;
  cfg.repetitions = 20;
  // A traverse time on a table row gets exactly the operating rate per hop.
  cfg.traverse_time_min = cfg.traverse_time_max = 90;
  auto run = run_scenario(cfg);
  // Ten gated hops at the 0.98 operating rate.
  EXPECT_NEAR(run.result.honest_completion.mean, std::pow(0.98, 10), 0.03);

  // Between rows the floor-row lookup is lenient, never stricter.
  cfg.traverse_time_min = 10;
  cfg.traverse_time_max = 130;
  EXPECT_GT(run_scenario(cfg).result.honest_completion.mean, std::pow(0.98, 10));
}

TEST(Scenario, AttackerSurvivorsNeverExceedSolutions) {
  ScenarioConfig cfg;
  cfg.vehicle_count = 40;
  cfg.malicious_fraction = 1;
  cfg.forged_min = cfg.forged_max = 4;
  cfg.forged_jitter = false;
  cfg.trajectory_length_min = cfg.trajectory_length_max = 10;
  cfg.drive_protocol = false;
  auto env = Environment::create(cfg);
  std::size_t all_four = 0, attackers = 0;
  for (std::size_t rep = 0; rep < 10; ++rep) {
    auto seed = repetition_seed(cfg.rng_seed, rep);
    auto rng = make_stream(seed, Stream::population);
    auto f = form_trajectories(env, generate_population(env.network, cfg, rng), PowMode::analytic, seed);
    EXPECT_EQ(f.survivor_excess, 0u);
    for (const auto& a : f.attackers) {
      EXPECT_LE(a.surviving, 4u);
      all_four += a.surviving == 4;
      ++attackers;
    }
  }
  // Pr(X >= 5)^9 is small at lambda = -ln(0.02).
  double p = pow::multi_trajectory_success_prob(5, 9, -std::log(0.02));
  EXPECT_LT(p, 0.05);
  EXPECT_LT(double(all_four) / double(attackers), p + 0.05);
}

TEST(Scenario, PairedSchemesOnOneSeed) {
  ScenarioConfig cfg;
  cfg.drive_protocol = false;
  auto env = Environment::create(cfg);
  const auto params = cfg.detection();
  for (std::size_t rep = 0; rep < 5; ++rep) {
    auto seed = repetition_seed(cfg.rng_seed, rep);
    auto rng = make_stream(seed, Stream::population);
    auto pop = generate_population(env.network, cfg, rng);
    auto pow_f = form_trajectories(env, pop, PowMode::analytic, seed);
    auto base_f = form_trajectories(env, pop, PowMode::disabled, seed);
    EXPECT_EQ(base_f.forged_blocked, 0u);
    EXPECT_EQ(base_f.pow_gates, 0u);
    auto pm = evaluate(pow_f, params);
    auto bm = evaluate(base_f, params);
    EXPECT_LE(pm.forged_submitted, bm.forged_submitted);
    EXPECT_LE(pm.detect_work, bm.detect_work);
    EXPECT_EQ(pm.scheme.dr(), 1.0 - pm.scheme.fnr());
    EXPECT_EQ(pm.scheme.tp + pm.scheme.fn, pop.forged_total());
    EXPECT_EQ(bm.scheme.tp + bm.scheme.fn, pop.forged_total());
  }
}

TEST(Sweep, AxesAndCsv) {
  EXPECT_EQ(default_axis_values(SweepAxis::check_window).size(), 25u);
  EXPECT_EQ(default_axis_values(SweepAxis::check_window).front(), 2);
  EXPECT_EQ(default_axis_values(SweepAxis::check_window).back(), 50);
  EXPECT_EQ(default_axis_values(SweepAxis::length_limit).size(), 12u);
  EXPECT_EQ(default_axis_values(SweepAxis::forged_count).back(), 40);
  EXPECT_THROW(parse_axis("speed"), InvalidArgument);
  ScenarioConfig base;
  auto c = apply_axis(base, SweepAxis::forged_count, 8);
  EXPECT_EQ(c.forged_min, 8u);
  EXPECT_EQ(c.forged_max, 8u);
  EXPECT_EQ(apply_axis(base, SweepAxis::length_limit, 6).length_limit, 6u);
  EXPECT_EQ(apply_axis(base, SweepAxis::check_window, 7).check_window, 7);

  auto cfg = small_config();
  auto table = run_sweep(cfg, SweepAxis::check_window, {5, 17, 40}, {PowMode::analytic, PowMode::disabled});
  ASSERT_EQ(table.rows.size(), 6u);
  EXPECT_EQ(table.cells.size(), 18u);
  for (const auto& r : table.rows) {
    EXPECT_EQ(r.result.repetitions, 3u);
    EXPECT_DOUBLE_EQ(r.result.dr.mean, 1.0 - r.result.fnr.mean);
  }
  auto csv = sweep_csv(table);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSweepHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_EQ(csv, sweep_csv(run_sweep(cfg, SweepAxis::check_window, {5, 17, 40},
                                     {PowMode::analytic, PowMode::disabled}, 2)));
  EXPECT_NO_THROW(table.row(17, PowMode::disabled));
  // The sweep and a plain scenario agree on a shared cell.
  auto single = run_scenario(apply_axis(cfg, SweepAxis::check_window, 17));
  EXPECT_EQ(table.row(17, PowMode::analytic).result.fnr.mean, single.result.fnr.mean);
}

TEST(Stats, SummaryRanksSpearman) {
  auto s = summarize({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3.0), 1e-12);
  EXPECT_EQ(summarize({7}).stddev, 0.0);
  EXPECT_EQ(ranks({10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {10, 40, 90}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {3, 2, 1}), -1.0);
  EXPECT_EQ(spearman({1, 2, 3}, {5, 5, 5}), 0.0);
}

TEST(Config, JsonRoundTripAndErrors) {
  ScenarioConfig cfg;
  cfg.check_window = 9;
  cfg.pow_mode = PowMode::disabled;
  cfg.topology = Topology::line;
  auto text = config_to_json(cfg);
  auto back = config_from_json(text);
  EXPECT_EQ(config_to_json(back), text);
  EXPECT_EQ(config_hash(back), config_hash(cfg));
  EXPECT_EQ(config_hash(cfg).size(), 64u);
  back.rng_seed = 2;
  EXPECT_NE(config_hash(back), config_hash(cfg));

  auto partial = config_from_json(R"({"vehicle_count": 20, "forged_distribution": "poisson"})");
  EXPECT_EQ(partial.vehicle_count, 20u);
  EXPECT_EQ(partial.forged_distribution, ForgedDistribution::poisson);
  EXPECT_EQ(partial.length_limit, 15u);

  try {
    config_from_json(R"({"bogus": 1, "rng_seed": -4, "check_window": "wide", "vehicle_count": 10})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    std::set<std::string> keys(e.keys.begin(), e.keys.end());
    EXPECT_EQ(keys, (std::set<std::string>{"bogus", "rng_seed", "check_window"}));
  }
  EXPECT_THROW(config_from_json("[1]"), ConfigError);
  EXPECT_THROW(config_from_json("{"), ConfigError);
  EXPECT_THROW(config_from_json(R"({"pow_mode": "quantum"})"), InvalidArgument);
  EXPECT_THROW(config_from_json(R"({"operating_rate": 1.5})").validate(), InvalidArgument);
  // The canonical form lists every field.
  auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j.size(), 30u);
}
