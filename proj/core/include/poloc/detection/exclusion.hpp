#pragma once

#include "poloc/protocol/trajectory.hpp"

namespace poloc::detection {

using protocol::Trajectory;

struct DetectionParams {
  double check_window_s = 17.0;     // w
  std::size_t length_limit = 15;    // L
  double similarity_threshold = 0;  // tau, edges need similarity >= tau

  void validate() const;  // throws InvalidArgument
};

struct ExclusionResult {
  bool positive = false;         // the pair is judged distinct
  std::size_t intersection = 0;  // |T_i ∩ T_j| on a negative test
};

// Positive iff (a) two entries with distinct tags fall within the check
// window of each other (|dt| < w), or (b) the two trajectories together cover
// more than L distinct RSU tags. On a negative result the intersection is the
// size of a greedy time-ordered matching of equal-tag, co-windowed entries.
ExclusionResult exclusion_test(const Trajectory& a, const Trajectory& b,
                               const DetectionParams& params);

inline constexpr double kDistinctSentinel = -1.0;

// |T_i ∩ T_j| / min(|T_i|, |T_j|) on a negative test, -1 on a positive one.
// Throws InvalidArgument for empty trajectories.
double similarity(const Trajectory& a, const Trajectory& b, const DetectionParams& params);

}  // namespace poloc::detection
