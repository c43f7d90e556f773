#pragma once
// Hand-rolled generators and exhaustive oracles for graph properties.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "poloc/detection/graph.hpp"

namespace poloc::testing {

// G(n, p) with n in [1, max_n] and p in [0.1, 0.9].
inline detection::SimilarityGraph random_graph(std::mt19937_64& rng, std::size_t max_n = 12) {
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::size_t n = size(rng);
  const double p = density(rng);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("T" + std::to_string(i + 1));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng) < p) edges.emplace_back(u, v);
  return detection::graph_from_edges(std::move(ids), edges);
}

// Clique number by enumerating every vertex subset.
inline std::size_t brute_force_clique_number(const detection::SimilarityGraph& g) {
  const std::size_t n = g.size();
  std::size_t best = 0;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcountl(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u) {
      if (!(mask >> u & 1)) continue;
      for (std::size_t v = u + 1; v < n && ok; ++v)
        if ((mask >> v & 1) && !g.adjacent(u, v)) ok = false;
    }
    if (ok) best = size;
  }
  return best;
}

}  // namespace poloc::testing
