#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "poloc/pow/hashcash.hpp"

namespace poloc::pow {

struct TargetRow {
  double traverse_time_s = 0;
  double success_rate = 0;
  BigInt target;
};

// Lookup table mapping a vehicle's measured traverse time to the PoW target
// it must beat. Rows are kept sorted by (success_rate, traverse_time_s).
struct TargetTable {
  std::vector<TargetRow> rows;
  double hash_rate = 0;  // hashes per second assumed when building
  unsigned output_bits = kFullOutputBits;
  double operating_rate = 0;  // the success rate RSUs enforce

  std::vector<double> success_rates() const;
};

// K = ceil(-ln(1-p) N / (hash_rate * traverse_time)), clamped to [1, N-1]:
// the target for which P(at least one solution) = p under the Poisson model.
Target analytic_target(double p, double hash_rate, double traverse_time_s,
                       unsigned output_bits = kFullOutputBits);

enum class TableMode { analytic, monte_carlo };

struct TableBuildOptions {
  TableMode mode = TableMode::analytic;
  std::size_t trials = 1000;   // monte_carlo only
  std::uint64_t seed = 1;      // monte_carlo only
  double operating_rate = -1;  // defaults to the largest rate in the grid
};

// Monte-Carlo cells run `trials` real puzzles of round(hash_rate * time)
// hashes each and take the empirical p-quantile of the per-trial minimum
// value as K (so a fraction >= p of trials beat K).
TargetTable build_target_table(const std::vector<double>& success_rates,
                               const std::vector<double>& time_grid, double hash_rate,
                               unsigned output_bits, const TableBuildOptions& opts = {});

// Row at the operating rate with the greatest time <= traverse_time; times
// below the first row use the first (most lenient) row.
Target lookup_target(const TargetTable& table, double traverse_time_s);

// CSV: header `traverse_time_s,success_rate,target_hex`, one row per cell.
void write_target_table_csv(std::ostream& out, const TargetTable& table);
std::string target_table_csv(const TargetTable& table);
// Throws FormatError on malformed input. Output bits and operating rate are
// not part of the CSV and must be supplied by the loader.
TargetTable read_target_table_csv(std::istream& in, unsigned output_bits,
                                  double operating_rate = -1);

}  // namespace poloc::pow
