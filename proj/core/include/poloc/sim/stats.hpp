#pragma once

#include <vector>

namespace poloc::sim {

struct MetricSummary {
  double mean = 0;
  double stddev = 0;  // sample standard deviation, 0 for a single value
};

MetricSummary summarize(const std::vector<double>& values);

// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> ranks(const std::vector<double>& values);

// Spearman rank correlation: Pearson correlation of the average ranks.
// Returns 0 when either side is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace poloc::sim
