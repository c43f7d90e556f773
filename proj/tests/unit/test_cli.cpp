#include <gtest/gtest.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using poloc::testing::fixture_path;
using poloc::testing::run_cli;
using poloc::testing::scratch_dir;
using poloc::testing::slurp;

TEST(Cli, UsageErrorsExitTwo) {
  auto dir = scratch_dir("usage");
  EXPECT_EQ(run_cli("", dir).exit_code, 2);
  EXPECT_EQ(run_cli("frobnicate", dir).exit_code, 2);
  EXPECT_EQ(run_cli("keygen -t 3 -n 10", dir).exit_code, 2);
  auto bad = run_cli("keygen -t 11 -n 10 -o k.bin", dir);
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_FALSE(std::filesystem::exists(dir / "k.bin"));
  EXPECT_EQ(run_cli("target-table --times ''", dir).exit_code, 2);
  EXPECT_EQ(run_cli("target-table --rates 1.5", dir).exit_code, 2);
  EXPECT_EQ(run_cli("demo-run --tamper sideways", dir).exit_code, 2);
  EXPECT_EQ(run_cli("detect --trajectories missing.json", dir).exit_code, 2);
  EXPECT_EQ(run_cli("--version", dir).exit_code, 0);
  EXPECT_EQ(run_cli("--help", dir).exit_code, 0);
}

TEST(Cli, KeygenIsSeeded) {
  auto dir = scratch_dir("keygen");
  ASSERT_EQ(run_cli("keygen -t 3 -n 10 -o a.bin --seed 9", dir).exit_code, 0);
  ASSERT_EQ(run_cli("keygen -t 3 -n 10 -o b.bin --seed 9", dir).exit_code, 0);
  ASSERT_EQ(run_cli("keygen -t 3 -n 10 -o c.bin --seed 10", dir).exit_code, 0);
  EXPECT_EQ(slurp(dir / "a.bin"), slurp(dir / "b.bin"));
  EXPECT_NE(slurp(dir / "a.bin"), slurp(dir / "c.bin"));
}

TEST(Cli, DemoRunAndTampering) {
  auto dir = scratch_dir("demo");
  ASSERT_EQ(run_cli("keygen -t 3 -n 10 -o keys.bin", dir).exit_code, 0);
  auto ok = run_cli("demo-run --keys keys.bin --hops 4 --threshold 3 --traverse 90 --transcript t.json", dir);
  EXPECT_EQ(ok.exit_code, 0) << ok.err;
  EXPECT_NE(ok.out.find("m1 finalized at hop 3"), std::string::npos);
  EXPECT_NE(ok.out.find("m2 finalized at hop 4"), std::string::npos);
  EXPECT_TRUE(nlohmann::json::parse(slurp(dir / "t.json")).is_array());

  auto own = run_cli("demo-run --keys keys.bin --tamper ownership", dir);
  EXPECT_EQ(own.exit_code, 1);
  EXPECT_NE(own.err.find("ownership verification failed"), std::string::npos);
  auto pow = run_cli("demo-run --keys keys.bin --tamper pow", dir);
  EXPECT_EQ(pow.exit_code, 1);
  EXPECT_NE(pow.err.find("PoW verification failed"), std::string::npos);
  EXPECT_EQ(run_cli("demo-run --keys keys.bin --threshold 4", dir).exit_code, 2);

  // Arrivals 1000, 1090, 1180: hop 3 opens epoch 1 and the hop-2 tag goes stale.
  auto epoch = run_cli("demo-run --keys keys.bin --epoch-length 1100", dir);
  EXPECT_EQ(epoch.exit_code, 1);
  EXPECT_NE(epoch.out.find("epoch 1: location tags rotated"), std::string::npos);
  EXPECT_NE(epoch.err.find("hop 3: stale or unknown location tag"), std::string::npos);
  EXPECT_EQ(run_cli("demo-run --epoch-length 0", dir).exit_code, 2);
}

TEST(Cli, TargetTable) {
  auto dir = scratch_dir("table");
  auto r = run_cli("target-table --rates 0.95,0.90,0.85,0.80 --times 10:130:10 -o t.csv", dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto csv = slurp(dir / "t.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "traverse_time_s,success_rate,target_hex");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4 * 13);
  auto mc = run_cli("target-table --rates 0.9 --times 20,40 --hash-rate 10 --bits 32 --mode mc --trials 200", dir);
  EXPECT_EQ(mc.exit_code, 0) << mc.err;
  EXPECT_EQ(std::count(mc.out.begin(), mc.out.end(), '\n'), 3);
}

TEST(Cli, DetectFixtureAndEdgeCases) {
  auto dir = scratch_dir("detect");
  auto r = run_cli("detect --trajectories '" + fixture_path("seven_trajectories.json") +
                       "' -w 17 -L 7 -o v.json --dimacs g.dimacs",
                   dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto v = nlohmann::json::parse(slurp(dir / "v.json"));
  EXPECT_EQ(v["groups"][0], (nlohmann::json{"T2", "T3", "T6"}));
  EXPECT_NE(slurp(dir / "g.dimacs").find("p edge 7 7"), std::string::npos);

  std::ofstream(dir / "empty.json") << "[]";
  auto e = run_cli("detect --trajectories empty.json", dir);
  EXPECT_EQ(e.exit_code, 0);
  EXPECT_TRUE(nlohmann::json::parse(e.out)["groups"].empty());

  std::ofstream(dir / "broken.json") << "{\"trajectories\": [";
  EXPECT_EQ(run_cli("detect --trajectories broken.json", dir).exit_code, 2);

  // Non-increasing timestamps: listed, excluded, still exit 0.
  std::ofstream(dir / "mixed.json")
      << R"([{"id": "good", "entries": [{"timestamp": 1, "rsu": 1}]},
             {"id": "bad", "entries": [{"timestamp": 5, "rsu": 1}, {"timestamp": 5, "rsu": 2}]}])";
  auto m = run_cli("detect --trajectories mixed.json", dir);
  EXPECT_EQ(m.exit_code, 0);
  auto mv = nlohmann::json::parse(m.out);
  EXPECT_EQ(mv["excluded"].size(), 1u);
  EXPECT_EQ(mv["vertex_count"], 1);
  EXPECT_NE(m.err.find("bad"), std::string::npos);
}

TEST(Cli, SimulateSweepReport) {
  auto dir = scratch_dir("simulate");
  std::ofstream(dir / "cfg.json") << R"({"vehicle_count": 30, "rsu_count": 25, "repetitions": 2})";
  auto s = run_cli("simulate -c cfg.json -o out --scheme both --no-protocol", dir);
  ASSERT_EQ(s.exit_code, 0) << s.err;
  for (auto f : {"summary.csv", "summary_timing.csv", "histogram.csv", "manifest.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / f)) << f;
  auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
  EXPECT_EQ(manifest["config"]["vehicle_count"], 30);
  EXPECT_EQ(manifest["config_hash"].get<std::string>().size(), 64u);
  auto summary = slurp(dir / "out" / "summary.csv");
  EXPECT_NE(summary.find("analytic,"), std::string::npos);
  EXPECT_NE(summary.find("disabled,"), std::string::npos);

  auto w = run_cli("sweep -c cfg.json -o sw --axis check_window --values 5,17 --no-protocol -j 2", dir);
  ASSERT_EQ(w.exit_code, 0) << w.err;
  auto csv = slurp(dir / "sw" / "sweep_check_window.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  auto rep = run_cli("report -i sw -o report.md", dir);
  EXPECT_EQ(rep.exit_code, 0) << rep.err;
  EXPECT_NE(slurp(dir / "report.md").find("sweep_check_window"), std::string::npos);

  std::ofstream(dir / "bad.json") << R"({"bogus": 1, "rng_seed": "x"})";
  auto bad = run_cli("simulate -c bad.json -o out2", dir);
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_NE(bad.err.find("bogus"), std::string::npos);
  EXPECT_NE(bad.err.find("rng_seed"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(dir / "out2" / "summary.csv"));
}
