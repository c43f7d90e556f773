#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "poloc/detection/exclusion.hpp"

namespace poloc::detection {

// Fixed-size bitset over vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  static VertexSet full(std::size_t n);

  std::size_t capacity() const { return n_; }
  void set(std::size_t v) { words_[v >> 6] |= (std::uint64_t{1} << (v & 63)); }
  void reset(std::size_t v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool test(std::size_t v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
  bool empty() const;
  std::size_t count() const;
  VertexSet operator&(const VertexSet& o) const;
  VertexSet& operator&=(const VertexSet& o);
  std::vector<std::size_t> members() const;  // ascending

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexInfo {
  std::string id;
  std::size_t length = 0;
  std::uint32_t first_timestamp = 0;
};

struct WeightedEdge {
  std::size_t u = 0, v = 0;  // u < v
  double weight = 0;
};

// Simple undirected graph: vertices are trajectories, edges are negative
// exclusion tests weighted by similarity.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;
  explicit SimilarityGraph(std::vector<VertexInfo> vertices);

  std::size_t size() const { return vertices_.size(); }
  const VertexInfo& vertex(std::size_t v) const { return vertices_[v]; }
  const std::vector<VertexInfo>& vertices() const { return vertices_; }
  const VertexSet& neighbors(std::size_t v) const { return adj_[v]; }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  // Ignores self-loops and duplicates.
  void add_edge(std::size_t u, std::size_t v, double weight = 1.0);

 private:
  std::vector<VertexInfo> vertices_;
  std::vector<VertexSet> adj_;
  std::vector<WeightedEdge> edges_;
};

// Vertex i per trajectory i; edge iff the exclusion test is negative and the
// similarity is at least tau. O(n^2) pairwise tests.
SimilarityGraph build_similarity_graph(const std::vector<Trajectory>& trajectories,
                                       const DetectionParams& params);

// Convenience for tests and fixtures: vertices named by `ids`, unit weights.
SimilarityGraph graph_from_edges(std::vector<std::string> ids,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// DIMACS edge format: `p edge n m` then `e u v` lines, 1-based.
std::string to_dimacs(const SimilarityGraph& g);

}  // namespace poloc::detection
