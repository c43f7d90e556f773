#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "poloc/detection/max_clique.hpp"

namespace poloc::detection {

enum class Label { actual, sybil };

const char* to_string(Label label);

struct DetectionVerdict {
  std::vector<std::vector<std::size_t>> groups;  // in extraction order, each ascending
  std::vector<Label> labels;                     // per vertex
};

// Repeatedly removes a maximum clique until no vertex is left. In each group
// the longest trajectory is the actual one (ties: earliest first timestamp,
// then lowest vertex index), the others are sybil.
DetectionVerdict eliminate_cliques(const SimilarityGraph& g, CliqueSearchStats* stats = nullptr);

struct ClassificationCounts {
  std::size_t fp = 0, tn = 0, tp = 0, fn = 0;

  // Rates with an empty denominator are reported as 0.
  double fpr() const;
  double fnr() const;
  double dr() const { return 1.0 - fnr(); }
};

// `predicted` and `truth` are keyed by trajectory id. Positive class = sybil.
// Throws InvalidArgument if the id sets differ.
ClassificationCounts compute_metrics(const std::vector<std::string>& ids,
                                     const std::vector<Label>& predicted,
                                     const std::vector<std::string>& truth_ids,
                                     const std::vector<Label>& truth);

// Convenience when predictions and truth are already aligned by index.
ClassificationCounts compute_metrics(const std::vector<Label>& predicted,
                                     const std::vector<Label>& truth);

struct DetectionRun {
  SimilarityGraph graph;
  DetectionVerdict verdict;
  double elapsed_ms = 0;            // wall time of graph build + elimination
  std::uint64_t pair_tests = 0;     // exclusion tests evaluated
  std::uint64_t search_nodes = 0;   // branch-and-bound nodes
  std::uint64_t work() const { return pair_tests + search_nodes; }
};

DetectionRun run_detection(const std::vector<Trajectory>& trajectories, const DetectionParams& params);

// JSON report: ids, groups (by id), labels, detect_ms; per-pair similarities
// for every edge when `with_similarities` is set.
std::string verdict_json(const DetectionRun& run, bool with_similarities = false);

}  // namespace poloc::detection
