#include <gtest/gtest.h>
#include <openssl/sha.h>

#include <cmath>
#include <random>
#include <sstream>

#include "poloc/errors.hpp"
#include "poloc/pow/poisson.hpp"
#include "poloc/pow/target_table.hpp"

using namespace poloc;
using namespace poloc::pow;

namespace {

// Independent recomputation of the puzzle with raw OpenSSL calls.
BigInt oracle_value(const Bytes& seed, std::uint64_t nonce, unsigned bits) {
  unsigned char inner[SHA256_DIGEST_LENGTH];
  SHA256(seed.data(), seed.size(), inner);
  unsigned char buf[8 + SHA256_DIGEST_LENGTH];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(nonce >> (56 - 8 * i));
  std::copy(inner, inner + SHA256_DIGEST_LENGTH, buf + 8);
  unsigned char outer[SHA256_DIGEST_LENGTH];
  SHA256(buf, sizeof buf, outer);
  BigInt v = 0;
  for (auto b : outer) v = (v << 8) | b;
  return v >> (256 - bits);
}

Bytes random_seed(std::mt19937_64& rng) {
  Bytes s(1 + rng() % 40);
  for (auto& b : s) b = static_cast<std::uint8_t>(rng());
  return s;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Hashcash, VerifyAgreesWithRecomputation) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    auto seed = random_seed(rng);
    unsigned bits = trial % 3 == 0 ? 256 : 1 + static_cast<unsigned>(rng() % 64);
    std::uint64_t nonce = rng();
    BigInt n = output_space(bits);
    Target target{crypto::random_below(n, rng), bits};
    BigInt v = oracle_value(seed, nonce, bits);
    ASSERT_EQ(puzzle_value(seed, nonce, bits), v);
    ASSERT_EQ(verify_puzzle(seed, nonce, target), v < target.value);
  }
}

TEST(Hashcash, SolveHalfTarget) {
  Bytes seed{1, 2, 3};
  Target target{output_space(256) / 2, 256};
  auto sol = solve_puzzle(seed, target, 64);
  ASSERT_TRUE(sol.valid);
  EXPECT_TRUE(verify_puzzle(seed, sol.nonce, target));
  EXPECT_EQ(sol.achieved_value, oracle_value(seed, sol.nonce, 256));
  auto again = solve_puzzle(seed, target, 64);
  EXPECT_EQ(again.nonce, sol.nonce);
  EXPECT_EQ(again.achieved_value, sol.achieved_value);
  // The kept value is the minimum over the budget.
  for (std::uint64_t k = 0; k < 64; ++k) EXPECT_GE(oracle_value(seed, k, 256), sol.achieved_value);
  EXPECT_EQ(verify_puzzle(seed, sol.nonce + 1, target), oracle_value(seed, sol.nonce + 1, 256) < target.value);
}

TEST(Hashcash, RejectsBadTargets) {
  EXPECT_THROW((Target{output_space(8), 8}.validate()), InvalidArgument);
  EXPECT_THROW((Target{-1, 8}.validate()), InvalidArgument);
  EXPECT_THROW((Target{1, 0}.validate()), InvalidArgument);
  EXPECT_THROW((Target{1, 257}.validate()), InvalidArgument);
  Bytes seed{0};
  EXPECT_THROW(solve_puzzle(seed, Target{1, 8}, 0), InvalidArgument);
  // K = 0 can never be met.
  EXPECT_FALSE(solve_puzzle(seed, Target{0, 8}, 100).valid);
}

TEST(Hashcash, EmpiricalSuccessMatchesBernoulliModel) {
  const unsigned bits = 32;
  Target target{output_space(bits) / 4, bits};
  const std::uint64_t budget = 4;
  int ok = 0;
  for (std::uint32_t trial = 0; trial < 1000; ++trial) {
    Bytes seed;
    put_u32_be(seed, trial);
    ok += solve_puzzle(seed, target, budget).valid;
  }
  double expected = hashing_success_prob(target.value, budget, bits);
  EXPECT_NEAR(expected, 1 - std::pow(0.75, 4), 1e-12);
  EXPECT_NEAR(ok / 1000.0, expected, 0.03);
}

TEST(Poisson, ScalarOracles) {
  EXPECT_NEAR(survival(2, 3.912), 1 - std::exp(-3.912) * (1 + 3.912), 1e-12);
  EXPECT_NEAR(survival(2, 3.912), 0.9018, 1e-4);
  EXPECT_NEAR(multi_trajectory_success_prob(2, 10, 3.912), std::pow(0.90175, 10), 2e-4);
  EXPECT_NEAR(multi_trajectory_success_prob(2, 10, 3.912), 0.356, 1e-3);
  EXPECT_NEAR(survival(1, 5.06), 1 - std::exp(-5.06), 1e-12);
  EXPECT_DOUBLE_EQ(survival(0, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(survival(3, 0.0), 0.0);
  double total = 0;
  for (unsigned k = 0; k < 60; ++k) total += poisson_pmf(k, 7.5);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_THROW(poisson_pmf(0, -1), InvalidArgument);
  EXPECT_THROW(multi_trajectory_success_prob(0, 1, 1.0), InvalidArgument);
}

TEST(Poisson, LambdaAtReferenceTargets) {
  BigInt k99 = BigInt(1674) * boost::multiprecision::pow(BigInt(10), 68);
  BigInt k85 = BigInt(634) * boost::multiprecision::pow(BigInt(10), 68);
  double l99 = poisson_lambda(k99, 3.5e6, 256);
  double l85 = poisson_lambda(k85, 3.5e6, 256);
  EXPECT_NEAR(l99, 3.5e6 * 1.674e71 / std::pow(2.0, 256), 1e-9);
  EXPECT_NEAR(l99, 5.06, 0.01);
  EXPECT_NEAR(1 - std::exp(-l99), 0.9937, 5e-4);
  EXPECT_NEAR(1 - std::exp(-l85), 0.853, 2e-3);
}

TEST(Poisson, SamplerMatchesPmf) {
  std::mt19937_64 rng(99);
  const int draws = 100000;
  const double lambda = 5.06;
  std::vector<int> hist(64, 0);
  int nonzero = 0;
  for (int i = 0; i < draws; ++i) {
    unsigned x = sample_solution_count(lambda, rng);
    nonzero += x >= 1;
    ++hist[std::min<unsigned>(x, 63)];
  }
  double frac = double(nonzero) / draws;
  EXPECT_GE(frac, 0.990);
  EXPECT_LE(frac, 0.997);
  double tv = 0;
  for (unsigned k = 0; k < 64; ++k) tv += std::abs(hist[k] / double(draws) - poisson_pmf(k, lambda));
  EXPECT_LT(tv / 2, 0.02);
}

TEST(Poisson, MatchesBinomialEnumeration) {
  // Bernoulli hash draws with p = K/N against the Poisson survival function.
  const unsigned bits = 16;
  const BigInt n_space = output_space(bits);
  for (unsigned n = 1; n <= 16; ++n) {
    for (std::uint64_t k : {64u, 1024u, 4096u, 8192u}) {
      double p = double(k) / double(n_space);
      double lambda = poisson_lambda(BigInt(k), n, bits);
      ASSERT_NEAR(lambda, n * p, 1e-12);
      for (unsigned i = 1; i <= 4; ++i) {
        double exact = 0;
        for (unsigned x = i; x <= n; ++x)
          exact += static_cast<double>(binomial(n, x)) * std::pow(p, x) * std::pow(1 - p, n - x);
        EXPECT_NEAR(survival(i, lambda), exact, 0.05) << "n=" << n << " K=" << k << " i=" << i;
      }
    }
  }
}

TEST(Poisson, MultiTrajectoryMonotone) {
  for (double lambda : {0.5, 1.0, 3.912, 10.0}) {
    for (unsigned i = 1; i <= 4; ++i) {
      for (unsigned j = 1; j <= 10; ++j) {
        double v = multi_trajectory_success_prob(i, j, lambda);
        if (i < 4) { EXPECT_LT(multi_trajectory_success_prob(i + 1, j, lambda), v); }
        if (j < 10) { EXPECT_LT(multi_trajectory_success_prob(i, j + 1, lambda), v); }
      }
    }
  }
}

TEST(TargetTable, AnalyticTargetSolvesForRate) {
  const double rate = 3.5e6 / 90;
  auto k = analytic_target(0.99, rate, 90);
  EXPECT_NEAR(1 - std::exp(-poisson_lambda(k.value, rate * 90, 256)), 0.99, 1e-9);
  // Solving for the effective rate behind the 16.74e70 figure.
  double ratio = static_cast<double>(analytic_target(0.9937, rate, 90).value) / 1.674e71;
  EXPECT_NEAR(ratio, 1.0, 0.10);
  EXPECT_THROW(analytic_target(1.0, rate, 90), InvalidArgument);
  EXPECT_THROW(analytic_target(0.5, rate, 0), InvalidArgument);
  // Clamped into [1, N-1].
  EXPECT_EQ(analytic_target(0.999999, 1e-3, 1, 8).value, output_space(8) - 1);
  EXPECT_EQ(analytic_target(1e-12, 1e12, 1, 8).value, 1);
}

TEST(TargetTable, MonotoneGrid) {
  std::vector<double> rates{0.95, 0.90, 0.85, 0.80};
  std::vector<double> times;
  for (double t = 10; t <= 130; t += 10) times.push_back(t);
  auto table = build_target_table(rates, times, 3.5e6 / 90, 256);
  ASSERT_EQ(table.rows.size(), rates.size() * times.size());
  EXPECT_EQ(table.operating_rate, 0.95);
  for (double p : rates)
    for (std::size_t i = 1; i < times.size(); ++i)
      EXPECT_GT(analytic_target(p, table.hash_rate, times[i - 1]).value,
                analytic_target(p, table.hash_rate, times[i]).value);
  for (double t : times)
    for (std::size_t i = 1; i < rates.size(); ++i)
      EXPECT_GT(analytic_target(rates[i - 1], table.hash_rate, t).value,
                analytic_target(rates[i], table.hash_rate, t).value);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto& a = table.rows[i - 1];
    const auto& b = table.rows[i];
    EXPECT_TRUE(std::tie(a.success_rate, a.traverse_time_s) < std::tie(b.success_rate, b.traverse_time_s));
  }
}

TEST(TargetTable, LookupUsesFloorRow) {
  auto table = build_target_table({0.9}, {10, 20, 30}, 1000, 64);
  auto at = [&](double t) { return analytic_target(0.9, 1000, t, 64); };
  EXPECT_EQ(lookup_target(table, 5), at(10));
  EXPECT_EQ(lookup_target(table, 10), at(10));
  EXPECT_EQ(lookup_target(table, 19.9), at(10));
  EXPECT_EQ(lookup_target(table, 20), at(20));
  EXPECT_EQ(lookup_target(table, 1000), at(30));
}

TEST(TargetTable, MonteCarloAgreesWithAnalytic) {
  std::vector<double> rates{0.95, 0.90, 0.85, 0.80};
  std::vector<double> times{20, 40};
  TableBuildOptions mc;
  mc.mode = TableMode::monte_carlo;
  mc.trials = 1000;
  mc.seed = 5;
  auto a = build_target_table(rates, times, 10, 32);
  auto m = build_target_table(rates, times, 10, 32, mc);
  ASSERT_EQ(a.rows.size(), m.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    double ka = static_cast<double>(a.rows[i].target);
    double km = static_cast<double>(m.rows[i].target);
    EXPECT_LT(std::abs(km - ka) / ka, 0.15)
        << "p=" << a.rows[i].success_rate << " t=" << a.rows[i].traverse_time_s;
  }
  auto again = build_target_table(rates, times, 10, 32, mc);
  EXPECT_EQ(target_table_csv(again), target_table_csv(m));
}

TEST(TargetTable, CsvRoundTrip) {
  auto table = build_target_table({0.95, 0.8}, {10, 20}, 3.5e6 / 90, 256);
  auto csv = target_table_csv(table);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "traverse_time_s,success_rate,target_hex");
  std::istringstream in(csv);
  auto back = read_target_table_csv(in, 256, 0.95);
  ASSERT_EQ(back.rows.size(), table.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].target, table.rows[i].target);
    EXPECT_EQ(back.rows[i].success_rate, table.rows[i].success_rate);
  }
  std::istringstream bad("nope\n");
  EXPECT_THROW(read_target_table_csv(bad, 256), FormatError);
  std::istringstream wide("traverse_time_s,success_rate,target_hex\n10,0.9,1ff\n");
  EXPECT_THROW(read_target_table_csv(wide, 8), FormatError);
}
