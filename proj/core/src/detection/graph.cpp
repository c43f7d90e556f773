#include "poloc/detection/graph.hpp"

#include <bit>
#include <sstream>

#include "poloc/errors.hpp"

namespace poloc::detection {

VertexSet VertexSet::full(std::size_t n) {
  VertexSet s(n);
  for (std::size_t v = 0; v < n; ++v) s.set(v);
  return s;
}

bool VertexSet::empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::size_t VertexSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

VertexSet VertexSet::operator&(const VertexSet& o) const {
  VertexSet r = *this;
  r &= o;
  return r;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

SimilarityGraph::SimilarityGraph(std::vector<VertexInfo> vertices)
    : vertices_(std::move(vertices)), adj_(vertices_.size(), VertexSet(vertices_.size())) {}

void SimilarityGraph::add_edge(std::size_t u, std::size_t v, double weight) {
  if (u >= size() || v >= size()) throw InvalidArgument("edge endpoint out of range");
  if (u == v || adj_[u].test(v)) return;
  if (u > v) std::swap(u, v);
  adj_[u].set(v);
  adj_[v].set(u);
  edges_.push_back({u, v, weight});
}

SimilarityGraph build_similarity_graph(const std::vector<Trajectory>& trajectories,
                                       const DetectionParams& params) {
  params.validate();
  std::vector<VertexInfo> info;
  info.reserve(trajectories.size());
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& t = trajectories[i];
    if (t.entries.empty()) throw InvalidArgument("trajectory " + t.id + " is empty");
    info.push_back({t.id.empty() ? std::to_string(i) : t.id, t.length(), t.entries.front().timestamp});
  }
  SimilarityGraph g(std::move(info));
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    for (std::size_t j = i + 1; j < trajectories.size(); ++j) {
      double s = similarity(trajectories[i], trajectories[j], params);
      if (s != kDistinctSentinel && s >= params.similarity_threshold) g.add_edge(i, j, s);
    }
  }
  return g;
}

SimilarityGraph graph_from_edges(std::vector<std::string> ids,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<VertexInfo> info;
  for (auto& id : ids) info.push_back({std::move(id), 1, 0});
  SimilarityGraph g(std::move(info));
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::string to_dimacs(const SimilarityGraph& g) {
  std::ostringstream os;
  os << "c similarity graph: vertices are trajectories, edges are negative exclusion tests\n";
  for (std::size_t v = 0; v < g.size(); ++v) os << "c v " << (v + 1) << ' ' << g.vertex(v).id << '\n';
  os << "p edge " << g.size() << ' ' << g.edges().size() << '\n';
  for (const auto& e : g.edges()) os << "e " << (e.u + 1) << ' ' << (e.v + 1) << '\n';
  return os.str();
}

}  // namespace poloc::detection
