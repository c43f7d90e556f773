#include "poloc/pow/target_table.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "poloc/errors.hpp"

namespace poloc::pow {

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

bool same_rate(double a, double b) { return std::abs(a - b) <= 1e-12; }

std::string hex_of(const BigInt& v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

void sort_rows(TargetTable& t) {
  std::sort(t.rows.begin(), t.rows.end(), [](const TargetRow& a, const TargetRow& b) {
    if (a.success_rate != b.success_rate) return a.success_rate < b.success_rate;
    return a.traverse_time_s < b.traverse_time_s;
  });
}

Bytes mc_seed(std::uint64_t seed, double time, std::size_t trial) {
  Bytes s{'m', 'c'};
  put_u64_be(s, seed);
  put_u64_be(s, static_cast<std::uint64_t>(std::llround(time * 1000.0)));
  put_u64_be(s, trial);
  return s;
}

}  // namespace

std::vector<double> TargetTable::success_rates() const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (std::none_of(out.begin(), out.end(), [&](double x) { return same_rate(x, r.success_rate); }))
      out.push_back(r.success_rate);
  return out;
}

Target analytic_target(double p, double hash_rate, double traverse_time_s, unsigned output_bits) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("success probability must lie in (0, 1)");
  const double hashes = hash_rate * traverse_time_s;
  if (!(hashes > 0.0)) throw InvalidArgument("hash_rate * traverse_time must be positive");
  const BigInt n_space = output_space(output_bits);

  Real k = Real(-std::log1p(-p)) * Real(n_space) / Real(hashes);
  BigInt target = boost::multiprecision::ceil(k).convert_to<BigInt>();
  target = std::clamp(target, BigInt(1), BigInt(n_space - 1));
  return {target, output_bits};
}

TargetTable build_target_table(const std::vector<double>& success_rates,
                               const std::vector<double>& time_grid, double hash_rate,
                               unsigned output_bits, const TableBuildOptions& opts) {
  if (success_rates.empty() || time_grid.empty())
    throw InvalidArgument("target table needs non-empty rate and time grids");
  for (double p : success_rates)
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("success rates must lie in (0, 1)");
  for (double t : time_grid)
    if (!(t > 0.0)) throw InvalidArgument("traverse times must be positive");

  TargetTable table;
  table.hash_rate = hash_rate;
  table.output_bits = output_bits;
  table.operating_rate = opts.operating_rate > 0
                             ? opts.operating_rate
                             : *std::max_element(success_rates.begin(), success_rates.end());

  const BigInt n_space = output_space(output_bits);
  for (double time : time_grid) {
    if (opts.mode == TableMode::analytic) {
      for (double p : success_rates)
        table.rows.push_back({time, p, analytic_target(p, hash_rate, time, output_bits).value});
      continue;
    }
    if (opts.trials == 0) throw InvalidArgument("monte_carlo mode needs at least one trial");
    const auto budget = static_cast<std::uint64_t>(std::llround(hash_rate * time));
    if (budget == 0) throw InvalidArgument("hash budget rounds to zero");
    std::vector<BigInt> minima;
    minima.reserve(opts.trials);
    for (std::size_t trial = 0; trial < opts.trials; ++trial)
      minima.push_back(find_best_nonce(mc_seed(opts.seed, time, trial), budget, output_bits)
                           .achieved_value);
    std::sort(minima.begin(), minima.end());
    for (double p : success_rates) {
      auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(opts.trials)));
      rank = std::clamp<std::size_t>(rank, 1, opts.trials);
      BigInt k = minima[rank - 1] + 1;
      table.rows.push_back({time, p, std::clamp(k, BigInt(1), BigInt(n_space - 1))});
    }
  }
  sort_rows(table);
  return table;
}

Target lookup_target(const TargetTable& table, double traverse_time_s) {
  const TargetRow* first = nullptr;
  const TargetRow* floor_row = nullptr;
  for (const auto& r : table.rows) {
    if (!same_rate(r.success_rate, table.operating_rate)) continue;
    if (!first || r.traverse_time_s < first->traverse_time_s) first = &r;
    if (r.traverse_time_s <= traverse_time_s &&
        (!floor_row || r.traverse_time_s > floor_row->traverse_time_s))
      floor_row = &r;
  }
  if (!first) throw InvalidArgument("target table has no rows at the operating success rate");
  return {(floor_row ? floor_row : first)->target, table.output_bits};
}

namespace {

// Shortest decimal that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_target_table_csv(std::ostream& out, const TargetTable& table) {
  out << "traverse_time_s,success_rate,target_hex\n";
  for (const auto& r : table.rows) {
    out << shortest(r.traverse_time_s) << ',' << shortest(r.success_rate) << ',' << hex_of(r.target) << '\n';
  }
}

std::string target_table_csv(const TargetTable& table) {
  std::ostringstream os;
  write_target_table_csv(os, table);
  return os.str();
}

TargetTable read_target_table_csv(std::istream& in, unsigned output_bits, double operating_rate) {
  std::string line;
  if (!std::getline(in, line) || line != "traverse_time_s,success_rate,target_hex")
    throw FormatError("target table: missing or wrong header");
  TargetTable table;
  table.output_bits = output_bits;
  const BigInt n_space = output_space(output_bits);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string time_s, rate_s, hex_s;
    if (!std::getline(ls, time_s, ',') || !std::getline(ls, rate_s, ',') ||
        !std::getline(ls, hex_s) || hex_s.empty())
      throw FormatError("target table: malformed line " + std::to_string(lineno));
    TargetRow row;
    try {
      row.traverse_time_s = std::stod(time_s);
      row.success_rate = std::stod(rate_s);
      row.target = crypto::from_bytes_be(from_hex(hex_s.size() % 2 ? "0" + hex_s : hex_s));
    } catch (const std::exception&) {
      throw FormatError("target table: bad value on line " + std::to_string(lineno));
    }
    if (row.target >= n_space)
      throw FormatError("target table: target exceeds output space on line " +
                        std::to_string(lineno));
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw FormatError("target table: no rows");
  auto rates = table.success_rates();
  table.operating_rate =
      operating_rate > 0 ? operating_rate : *std::max_element(rates.begin(), rates.end());
  sort_rows(table);
  return table;
}

}  // namespace poloc::pow
