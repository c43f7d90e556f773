#include "poloc/crypto/shamir.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "poloc/errors.hpp"

namespace poloc::crypto {

namespace {

void check_threshold(std::size_t t, std::size_t n, const BigInt& q) {
  if (t == 0 || t > n)
    throw InvalidThreshold("invalid threshold: need 1 <= t <= n (t=" + std::to_string(t) +
                           ", n=" + std::to_string(n) + ")");
  if (BigInt(n) >= q) throw InvalidThreshold("group order too small for n distinct share indices");
}

void check_distinct(std::span<const BigInt> indices, const BigInt& q) {
  std::vector<BigInt> sorted;
  sorted.reserve(indices.size());
  for (const auto& a : indices) {
    BigInt r = mod(a, q);
    if (r == 0) throw InvalidArgument("share index must be nonzero");
    sorted.push_back(std::move(r));
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DuplicateIndex("repeated share index");
}

}  // namespace

SecretShares split_secret_with_coefficients(const BigInt& secret,
                                            std::span<const BigInt> coefficients, std::size_t n,
                                            const GroupParams& gp) {
  const BigInt& q = gp.prime_order_q;
  const std::size_t t = coefficients.size() + 1;
  check_threshold(t, n, q);
  if (secret < 0 || secret >= q) throw InvalidArgument("secret must lie in [0, q)");

  SecretShares out;
  out.threshold_t = t;
  out.total_n = n;
  out.master_secret_d = secret;
  out.share_points.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    // Horner evaluation of secret + a_1 x + ... + a_{t-1} x^{t-1}.
    BigInt x = i;
    BigInt acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
      acc = mod_add(mod_mul(acc, x, q), *it, q);
    acc = mod_add(mod_mul(acc, x, q), secret, q);
    out.share_points.push_back({x, acc});
  }
  return out;
}

SecretShares split_secret(const BigInt& secret, std::size_t t, std::size_t n,
                          const GroupParams& gp, std::uint64_t rng_seed) {
  check_threshold(t, n, gp.prime_order_q);
  std::mt19937_64 rng(rng_seed);
  std::vector<BigInt> coefficients;
  coefficients.reserve(t - 1);
  for (std::size_t j = 1; j < t; ++j) coefficients.push_back(random_below(gp.prime_order_q, rng));
  return split_secret_with_coefficients(secret, coefficients, n, gp);
}

BigInt lagrange_coefficient(std::span<const BigInt> subset_indices, const BigInt& target_index,
                            const BigInt& q) {
  check_distinct(subset_indices, q);
  const BigInt ai = mod(target_index, q);
  bool found = false;
  BigInt num = 1, den = 1;
  for (const auto& aj_raw : subset_indices) {
    BigInt aj = mod(aj_raw, q);
    if (aj == ai) {
      found = true;
      continue;
    }
    num = mod_mul(num, mod_sub(0, aj, q), q);
    den = mod_mul(den, mod_sub(ai, aj, q), q);
  }
  if (!found) throw InvalidArgument("target index is not in the subset");
  return mod_mul(num, mod_inv(den, q), q);
}

BigInt reconstruct_secret(std::span<const SharePoint> shares, std::size_t t, const BigInt& q) {
  if (t == 0) throw InvalidThreshold("threshold must be at least 1");
  if (shares.size() < t)
    throw InsufficientShares("need " + std::to_string(t) + " shares, got " +
                             std::to_string(shares.size()));
  auto chosen = shares.first(t);
  std::vector<BigInt> indices;
  indices.reserve(t);
  for (const auto& s : chosen) indices.push_back(s.index);
  BigInt secret = 0;
  for (const auto& s : chosen)
    secret = mod_add(secret, mod_mul(s.value, lagrange_coefficient(indices, s.index, q), q), q);
  return secret;
}

}  // namespace poloc::crypto
