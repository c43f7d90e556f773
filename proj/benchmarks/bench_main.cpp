#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "poloc/crypto/keys.hpp"
#include "poloc/crypto/threshold.hpp"
#include "poloc/detection/graph.hpp"
#include "poloc/detection/max_clique.hpp"
#include "poloc/pow/hashcash.hpp"
#include "poloc/protocol/authority.hpp"

using namespace poloc;

namespace {

// Hash budget per iteration; the target is 0 so the whole budget is spent.
void bm_solve_puzzle(benchmark::State& state) {
  const std::vector<std::uint8_t> seed(64, 0x5a);
  pow::Target target{0, 256};
  const auto budget = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pow::solve_puzzle(seed, target, budget));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_solve_puzzle)->Arg(1 << 10)->Arg(1 << 14);

void bm_combine_shares(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  const auto gp = crypto::GroupParams::default_256();
  const auto keys = crypto::deal_group_keys(gp, t, t + 2, 7);
  const std::vector<std::uint8_t> msg{'b', 'e', 'n', 'c', 'h'};
  std::vector<crypto::SignatureShare> shares;
  for (std::size_t i = 0; i < t; ++i) shares.push_back(crypto::sign_share(keys.shares[i], msg, gp));
  for (auto _ : state) benchmark::DoNotOptimize(crypto::combine_shares(shares, t, gp));
}
BENCHMARK(bm_combine_shares)->Arg(3)->Arg(5)->Arg(10);

detection::SimilarityGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("T" + std::to_string(i + 1));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return detection::graph_from_edges(std::move(ids), edges);
}

void bm_max_clique(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(detection::max_clique(g));
}
BENCHMARK(bm_max_clique)->Arg(40)->Arg(160)->Arg(320);

// n trajectories of 15 entries over 200 RSUs, timestamps 10-130 s apart.
std::vector<protocol::Trajectory> random_trajectories(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<protocol::RsuId> rsu(1, 200);
  std::uniform_int_distribution<std::uint32_t> gap(10, 130);
  std::vector<protocol::Trajectory> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].id = "T" + std::to_string(i + 1);
    std::uint32_t ts = gap(rng);
    for (int k = 0; k < 15; ++k, ts += gap(rng))
      out[i].entries.push_back({ts, protocol::random_tag(rsu(rng), 0, rng)});
  }
  return out;
}

void bm_build_similarity_graph(benchmark::State& state) {
  const auto trajectories = random_trajectories(static_cast<std::size_t>(state.range(0)), 13);
  const detection::DetectionParams params;
  for (auto _ : state)
    benchmark::DoNotOptimize(detection::build_similarity_graph(trajectories, params));
}
BENCHMARK(bm_build_similarity_graph)->Arg(40)->Arg(160)->Arg(320);

}  // namespace

BENCHMARK_MAIN();
