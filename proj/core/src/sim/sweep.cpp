#include "poloc/sim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "poloc/errors.hpp"

namespace poloc::sim {

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::check_window: return "check_window";
    case SweepAxis::length_limit: return "length_limit";
    case SweepAxis::forged_count: return "forged_count";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view s) {
  if (s == "check_window") return SweepAxis::check_window;
  if (s == "length_limit") return SweepAxis::length_limit;
  if (s == "forged_count") return SweepAxis::forged_count;
  throw InvalidArgument("unknown sweep axis '" + std::string(s) + "'");
}

std::vector<double> default_axis_values(SweepAxis axis) {
  std::vector<double> v;
  switch (axis) {
    case SweepAxis::check_window:
      for (int w = 2; w <= 50; w += 2) v.push_back(w);
      break;
    case SweepAxis::length_limit:
      for (int l = 2; l <= 24; l += 2) v.push_back(l);
      break;
    case SweepAxis::forged_count:
      for (int c = 0; c <= 40; c += 4) v.push_back(c);
      break;
  }
  return v;
}

ScenarioConfig apply_axis(ScenarioConfig cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::check_window:
      cfg.check_window = value;
      break;
    case SweepAxis::length_limit:
      if (value < 1 || value != std::floor(value)) throw InvalidArgument("length limit must be a positive integer");
      cfg.length_limit = static_cast<std::size_t>(value);
      break;
    case SweepAxis::forged_count:
      if (value < 0 || value != std::floor(value)) throw InvalidArgument("forged count must be a non-negative integer");
      cfg.forged_distribution = ForgedDistribution::uniform;
      cfg.forged_min = cfg.forged_max = static_cast<std::size_t>(value);
      break;
  }
  cfg.validate();
  return cfg;
}

const SweepRow& SweepTable::row(double axis_value, PowMode scheme) const {
  for (const auto& r : rows)
    if (r.axis_value == axis_value && r.scheme == scheme) return r;
  throw InvalidArgument("no sweep row for that axis value and scheme");
}

SweepTable run_sweep(const ScenarioConfig& base, SweepAxis axis, const std::vector<double>& values,
                     const std::vector<PowMode>& schemes, std::size_t jobs) {
  if (values.empty()) throw InvalidArgument("sweep needs at least one axis value");
  if (schemes.empty()) throw InvalidArgument("sweep needs at least one scheme");
  std::vector<ScenarioConfig> configs;
  for (double v : values) configs.push_back(apply_axis(base, axis, v));

  const std::size_t reps = base.repetitions;
  const std::size_t nv = values.size(), ns = schemes.size();
  // results[(v * ns + s) * reps + rep]
  std::vector<RepetitionMetrics> results(nv * ns * reps);
  std::vector<std::vector<AttackerOutcome>> attackers(nv * ns * reps);
  auto slot = [&](std::size_t v, std::size_t s, std::size_t rep) { return (v * ns + s) * reps + rep; };

  const bool shared_population = axis != SweepAxis::forged_count;
  const Environment env = Environment::create(base);

  parallel_for(reps, jobs, [&](std::size_t rep) {
    const auto seed = repetition_seed(base.rng_seed, rep);
    if (shared_population) {
      auto pop_rng = make_stream(seed, Stream::population);
      const auto pop = generate_population(env.network, base, pop_rng);
      for (std::size_t s = 0; s < ns; ++s) {
        const auto formation = form_trajectories(env, pop, schemes[s], seed);
        for (std::size_t v = 0; v < nv; ++v) {
          results[slot(v, s, rep)] = evaluate(formation, configs[v].detection());
          attackers[slot(v, s, rep)] = formation.attackers;
        }
      }
    } else {
      for (std::size_t v = 0; v < nv; ++v) {
        auto pop_rng = make_stream(seed, Stream::population);
        const auto pop = generate_population(env.network, configs[v], pop_rng);
        for (std::size_t s = 0; s < ns; ++s) {
          const auto formation = form_trajectories(env, pop, schemes[s], seed);
          results[slot(v, s, rep)] = evaluate(formation, configs[v].detection());
          attackers[slot(v, s, rep)] = formation.attackers;
        }
      }
    }
  });

  SweepTable table;
  table.axis = axis;
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t s = 0; s < ns; ++s) {
      std::vector<RepetitionMetrics> cell(results.begin() + static_cast<std::ptrdiff_t>(slot(v, s, 0)),
                                          results.begin() + static_cast<std::ptrdiff_t>(slot(v, s, 0) + reps));
      std::vector<std::vector<AttackerOutcome>> att(
          attackers.begin() + static_cast<std::ptrdiff_t>(slot(v, s, 0)),
          attackers.begin() + static_cast<std::ptrdiff_t>(slot(v, s, 0) + reps));
      table.rows.push_back({values[v], schemes[s], ScenarioResult::aggregate(cell, att)});
      for (std::size_t rep = 0; rep < reps; ++rep)
        table.cells.push_back({values[v], rep, schemes[s], cell[rep]});
    }
  }
  return table;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string axis_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string result_columns(const ScenarioResult& r) {
  std::string s;
  for (double v : {r.fpr.mean, r.fnr.mean, r.dr.mean, r.detect_work.mean, r.fpr.stddev, r.fnr.stddev,
                   r.dr.stddev, r.detect_work.stddev, r.detector_fnr.mean, r.detector_fnr.stddev,
                   r.trajectories.mean, r.forged_submitted.mean, r.honest_completion.mean})
    s += num(v) + ",";
  s += std::to_string(r.repetitions);
  return s;
}

}  // namespace

std::string sweep_csv(const SweepTable& table) {
  std::string out(kSweepHeader);
  out += "\n";
  for (const auto& r : table.rows)
    out += axis_num(r.axis_value) + "," + std::string(to_string(r.scheme)) + "," + result_columns(r.result) + "\n";
  return out;
}

std::string sweep_timing_csv(const SweepTable& table) {
  std::string out = "axis_value,scheme,detect_ms,detect_ms_std,repetitions\n";
  for (const auto& r : table.rows)
    out += axis_num(r.axis_value) + "," + std::string(to_string(r.scheme)) + "," +
           num(r.result.detect_ms.mean) + "," + num(r.result.detect_ms.stddev) + "," +
           std::to_string(r.result.repetitions) + "\n";
  return out;
}

std::string summary_csv(const std::vector<std::pair<PowMode, ScenarioResult>>& results) {
  std::string header(kSweepHeader.substr(kSweepHeader.find(',') + 1));
  std::string out = header + "\n";
  for (const auto& [mode, r] : results) out += std::string(to_string(mode)) + "," + result_columns(r) + "\n";
  return out;
}

std::string histogram_csv(const std::vector<std::pair<PowMode, ScenarioResult>>& results) {
  std::string out = "scheme,surviving_forged,attackers\n";
  for (const auto& [mode, r] : results)
    for (const auto& [count, attackers] : r.surviving_forged_histogram)
      out += std::string(to_string(mode)) + "," + std::to_string(count) + "," + std::to_string(attackers) + "\n";
  return out;
}

}  // namespace poloc::sim
