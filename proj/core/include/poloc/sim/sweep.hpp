#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "poloc/sim/scenario.hpp"

namespace poloc::sim {

enum class SweepAxis { check_window, length_limit, forged_count };

std::string_view to_string(SweepAxis a);
SweepAxis parse_axis(std::string_view s);

// check_window 2..50 step 2, length_limit 2..24 step 2, forged_count 0..40 step 4.
std::vector<double> default_axis_values(SweepAxis axis);

// The config with the axis parameter set to `value`. forged_count gives every
// attacker exactly that many forged trajectories.
ScenarioConfig apply_axis(ScenarioConfig cfg, SweepAxis axis, double value);

// One (axis value, repetition, scheme) evaluation.
struct SweepCell {
  double axis_value = 0;
  std::size_t repetition = 0;
  PowMode scheme = PowMode::analytic;
  RepetitionMetrics metrics;
};

struct SweepRow {
  double axis_value = 0;
  PowMode scheme = PowMode::analytic;
  ScenarioResult result;
};

struct SweepTable {
  SweepAxis axis = SweepAxis::check_window;
  std::vector<SweepRow> rows;    // by axis value, then scheme in the order given
  std::vector<SweepCell> cells;  // same order, repetitions innermost

  const SweepRow& row(double axis_value, PowMode scheme) const;
};

// Every scheme sees the same populations (same repetition seeds). Detection
// axes reuse one population per (repetition, scheme) for all axis values.
SweepTable run_sweep(const ScenarioConfig& base, SweepAxis axis, const std::vector<double>& values,
                     const std::vector<PowMode>& schemes, std::size_t jobs = 1);

// CSV outputs. The main table is deterministic for a given config; wall-clock
// detection times go to the separate timing table.
std::string sweep_csv(const SweepTable& table);
std::string sweep_timing_csv(const SweepTable& table);
std::string summary_csv(const std::vector<std::pair<PowMode, ScenarioResult>>& results);
std::string histogram_csv(const std::vector<std::pair<PowMode, ScenarioResult>>& results);

inline constexpr std::string_view kSweepHeader =
    "axis_value,scheme,fpr,fnr,dr,detect_work,fpr_std,fnr_std,dr_std,detect_work_std,"
    "detector_fnr,detector_fnr_std,trajectories,forged_submitted,honest_completion,repetitions";

}  // namespace poloc::sim
