#include "poloc/detection/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "poloc/errors.hpp"

namespace poloc::detection {

void DetectionParams::validate() const {
  if (!(check_window_s > 0.0)) throw InvalidArgument("check window must be positive");
  if (length_limit < 1) throw InvalidArgument("trajectory length limit must be at least 1");
  if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0))
    throw InvalidArgument("similarity threshold must lie in [0, 1]");
}

namespace {

bool co_windowed(std::uint32_t ta, std::uint32_t tb, double w) {
  double dt = std::abs(static_cast<double>(ta) - static_cast<double>(tb));
  return dt < w;
}

bool distinct_tags_in_window(const Trajectory& a, const Trajectory& b, double w) {
  // Entries are chronological, so a sliding lower bound on b suffices.
  std::size_t lo = 0;
  for (const auto& ea : a.entries) {
    while (lo < b.entries.size() &&
           static_cast<double>(b.entries[lo].timestamp) <= static_cast<double>(ea.timestamp) - w)
      ++lo;
    for (std::size_t j = lo; j < b.entries.size(); ++j) {
      const auto& eb = b.entries[j];
      if (static_cast<double>(eb.timestamp) >= static_cast<double>(ea.timestamp) + w) break;
      if (eb.tag.tag != ea.tag.tag) return true;
    }
  }
  return false;
}

std::size_t union_size(const Trajectory& a, const Trajectory& b) {
  std::set<protocol::TagBytes> tags;
  for (const auto& e : a.entries) tags.insert(e.tag.tag);
  for (const auto& e : b.entries) tags.insert(e.tag.tag);
  return tags.size();
}

std::size_t greedy_intersection(const Trajectory& a, const Trajectory& b, double w) {
  std::vector<bool> used(b.entries.size(), false);
  std::size_t matched = 0;
  for (const auto& ea : a.entries) {
    for (std::size_t j = 0; j < b.entries.size(); ++j) {
      if (used[j]) continue;
      const auto& eb = b.entries[j];
      if (eb.tag.tag == ea.tag.tag && co_windowed(ea.timestamp, eb.timestamp, w)) {
        used[j] = true;
        ++matched;
        break;
      }
    }
  }
  return matched;
}

}  // namespace

ExclusionResult exclusion_test(const Trajectory& a, const Trajectory& b,
                               const DetectionParams& params) {
  if (distinct_tags_in_window(a, b, params.check_window_s)) return {true, 0};
  if (union_size(a, b) > params.length_limit) return {true, 0};
  return {false, greedy_intersection(a, b, params.check_window_s)};
}

double similarity(const Trajectory& a, const Trajectory& b, const DetectionParams& params) {
  if (a.entries.empty() || b.entries.empty())
    throw InvalidArgument("similarity is undefined for an empty trajectory");
  auto r = exclusion_test(a, b, params);
  if (r.positive) return kDistinctSentinel;
  return static_cast<double>(r.intersection) /
         static_cast<double>(std::min(a.length(), b.length()));
}

}  // namespace poloc::detection
