#include "poloc/detection/eliminate.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

#include "poloc/errors.hpp"

namespace poloc::detection {

const char* to_string(Label label) { return label == Label::actual ? "actual" : "sybil"; }

DetectionVerdict eliminate_cliques(const SimilarityGraph& g, CliqueSearchStats* stats) {
  DetectionVerdict verdict;
  verdict.labels.assign(g.size(), Label::sybil);
  VertexSet remaining = VertexSet::full(g.size());
  while (!remaining.empty()) {
    auto clique = max_clique(g, remaining, stats);
    for (auto v : clique) remaining.reset(v);
    auto rep = *std::min_element(clique.begin(), clique.end(), [&](std::size_t a, std::size_t b) {
      const auto& va = g.vertex(a);
      const auto& vb = g.vertex(b);
      if (va.length != vb.length) return va.length > vb.length;
      if (va.first_timestamp != vb.first_timestamp) return va.first_timestamp < vb.first_timestamp;
      return a < b;
    });
    verdict.labels[rep] = Label::actual;
    verdict.groups.push_back(std::move(clique));
  }
  return verdict;
}

double ClassificationCounts::fpr() const {
  return fp + tn == 0 ? 0.0 : static_cast<double>(fp) / static_cast<double>(fp + tn);
}

double ClassificationCounts::fnr() const {
  return fn + tp == 0 ? 0.0 : static_cast<double>(fn) / static_cast<double>(fn + tp);
}

ClassificationCounts compute_metrics(const std::vector<Label>& predicted, const std::vector<Label>& truth) {
  if (predicted.size() != truth.size()) throw InvalidArgument("prediction and truth sizes differ");
  ClassificationCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    bool said_sybil = predicted[i] == Label::sybil;
    bool is_sybil = truth[i] == Label::sybil;
    if (is_sybil) (said_sybil ? c.tp : c.fn)++;
    else (said_sybil ? c.fp : c.tn)++;
  }
  return c;
}

ClassificationCounts compute_metrics(const std::vector<std::string>& ids,
                                     const std::vector<Label>& predicted,
                                     const std::vector<std::string>& truth_ids,
                                     const std::vector<Label>& truth) {
  if (ids.size() != predicted.size() || truth_ids.size() != truth.size())
    throw InvalidArgument("id and label lists differ in length");
  std::map<std::string, Label> by_id;
  for (std::size_t i = 0; i < truth_ids.size(); ++i)
    if (!by_id.emplace(truth_ids[i], truth[i]).second)
      throw InvalidArgument("duplicate ground-truth id " + truth_ids[i]);
  if (by_id.size() != ids.size()) throw InvalidArgument("verdict and ground truth cover different ids");
  std::vector<Label> aligned;
  aligned.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw InvalidArgument("no ground truth for trajectory " + id);
    aligned.push_back(it->second);
  }
  return compute_metrics(predicted, aligned);
}

DetectionRun run_detection(const std::vector<Trajectory>& trajectories, const DetectionParams& params) {
  auto start = std::chrono::steady_clock::now();
  DetectionRun run;
  run.graph = build_similarity_graph(trajectories, params);
  std::size_t n = trajectories.size();
  run.pair_tests = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  CliqueSearchStats stats;
  run.verdict = eliminate_cliques(run.graph, &stats);
  run.search_nodes = stats.nodes;
  run.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run;
}

std::string verdict_json(const DetectionRun& run, bool with_similarities) {
  using nlohmann::json;
  const auto& g = run.graph;
  json ids = json::array();
  for (const auto& v : g.vertices()) ids.push_back(v.id);
  json groups = json::array();
  for (const auto& grp : run.verdict.groups) {
    json members = json::array();
    for (auto v : grp) members.push_back(g.vertex(v).id);
    groups.push_back(members);
  }
  json labels = json::object();
  for (std::size_t v = 0; v < g.size(); ++v) labels[g.vertex(v).id] = to_string(run.verdict.labels[v]);
  json out{{"ids", ids},
           {"groups", groups},
           {"labels", labels},
           {"vertex_count", g.size()},
           {"edge_count", g.edges().size()},
           {"detect_ms", run.elapsed_ms}};
  if (with_similarities) {
    json sims = json::array();
    for (const auto& e : g.edges())
      sims.push_back({{"a", g.vertex(e.u).id}, {"b", g.vertex(e.v).id}, {"similarity", e.weight}});
    out["similarities"] = sims;
  }
  return out.dump(2) + "\n";
}

}  // namespace poloc::detection
