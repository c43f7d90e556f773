#include "poloc/detection/max_clique.hpp"

#include <algorithm>

namespace poloc::detection {
namespace {

class Search {
 public:
  Search(const SimilarityGraph& g, CliqueSearchStats* stats) : g_(g), stats_(stats) {}

  // Size of a maximum clique inside `p`, stopping early once `goal` is hit
  // (goal = 0 means no early stop).
  std::size_t omega(const VertexSet& p, std::size_t goal) {
    best_ = 0;
    goal_ = goal;
    std::size_t depth = 0;
    expand(p, depth);
    return best_;
  }

 private:
  // Greedy sequential colouring of `p`, visiting vertices by descending
  // degree. Returns vertices in colour order with their colour numbers.
  void colour_sort(const VertexSet& p, std::vector<std::size_t>& order,
                   std::vector<std::size_t>& colours) const {
    auto verts = p.members();
    std::stable_sort(verts.begin(), verts.end(), [&](std::size_t a, std::size_t b) {
      return (g_.neighbors(a) & p).count() > (g_.neighbors(b) & p).count();
    });
    std::vector<std::vector<std::size_t>> classes;
    for (auto v : verts) {
      std::size_t k = 0;
      for (; k < classes.size(); ++k) {
        bool clash = false;
        for (auto u : classes[k])
          if (g_.adjacent(u, v)) { clash = true; break; }
        if (!clash) break;
      }
      if (k == classes.size()) classes.emplace_back();
      classes[k].push_back(v);
    }
    order.clear();
    colours.clear();
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (auto v : classes[k]) {
        order.push_back(v);
        colours.push_back(k + 1);
      }
  }

  bool done() const { return goal_ != 0 && best_ >= goal_; }

  void expand(VertexSet p, std::size_t depth) {
    if (stats_) ++stats_->nodes;
    std::vector<std::size_t> order, colours;
    colour_sort(p, order, colours);
    // Take vertices from the highest colour down; the colour number bounds
    // the clique that can still be built from the remaining prefix.
    for (std::size_t i = order.size(); i-- > 0;) {
      if (depth + colours[i] <= best_ || done()) return;
      std::size_t v = order[i];
      VertexSet next = p & g_.neighbors(v);
      if (next.empty()) {
        best_ = std::max(best_, depth + 1);
      } else {
        expand(next, depth + 1);
      }
      p.reset(v);
    }
  }

  const SimilarityGraph& g_;
  CliqueSearchStats* stats_;
  std::size_t best_ = 0;
  std::size_t goal_ = 0;
};

}  // namespace

std::vector<std::size_t> max_clique(const SimilarityGraph& g, const VertexSet& allowed,
                                    CliqueSearchStats* stats) {
  Search search(g, stats);
  std::size_t target = search.omega(allowed, 0);
  // Canonicalise: greedily fix the smallest vertex that still extends to a
  // clique of the required size.
  std::vector<std::size_t> clique;
  VertexSet cand = allowed;
  for (std::size_t need = target; need > 0; --need) {
    for (auto v : cand.members()) {
      VertexSet rest = cand & g.neighbors(v);
      for (std::size_t u = 0; u <= v; ++u) rest.reset(u);
      if (need == 1 || search.omega(rest, need - 1) >= need - 1) {
        clique.push_back(v);
        cand = rest;
        break;
      }
    }
  }
  return clique;
}

std::vector<std::size_t> max_clique(const SimilarityGraph& g, CliqueSearchStats* stats) {
  return max_clique(g, VertexSet::full(g.size()), stats);
}

bool is_clique(const SimilarityGraph& g, const std::vector<std::size_t>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

}  // namespace poloc::detection
