#pragma once

#include <cstdint>
#include <vector>

#include "poloc/detection/graph.hpp"

namespace poloc::detection {

struct CliqueSearchStats {
  std::uint64_t nodes = 0;  // branch-and-bound nodes expanded
};

// Exact maximum clique by branch and bound with a greedy-colouring bound
// (vertices ordered by degree, colour classes built greedily, a branch is cut
// when |C| + colours <= |best|). Among all maximum cliques the result is the
// one whose sorted vertex list is lexicographically smallest, so it does not
// depend on recursion order. Returned vertices are ascending.
std::vector<std::size_t> max_clique(const SimilarityGraph& g, CliqueSearchStats* stats = nullptr);

// Same search restricted to the vertices in `allowed`.
std::vector<std::size_t> max_clique(const SimilarityGraph& g, const VertexSet& allowed,
                                    CliqueSearchStats* stats = nullptr);

bool is_clique(const SimilarityGraph& g, const std::vector<std::size_t>& vertices);

}  // namespace poloc::detection
