#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "poloc/crypto/group.hpp"

namespace poloc::crypto {

struct SharePoint {
  BigInt index;  // alpha_i, nonzero
  BigInt value;  // d_i = q(alpha_i)
  friend bool operator==(const SharePoint&, const SharePoint&) = default;
};

struct SecretShares {
  std::size_t threshold_t = 0;
  std::size_t total_n = 0;
  std::vector<SharePoint> share_points;
  // Only populated in dealer (TA) and test contexts.
  std::optional<BigInt> master_secret_d;
};

// Deals `secret` with a random degree-(t-1) polynomial; alpha_i = i.
SecretShares split_secret(const BigInt& secret, std::size_t t, std::size_t n,
                          const GroupParams& gp, std::uint64_t rng_seed);

// Same, with caller-chosen coefficients a_1..a_{t-1}.
SecretShares split_secret_with_coefficients(const BigInt& secret,
                                            std::span<const BigInt> coefficients, std::size_t n,
                                            const GroupParams& gp);

// delta_i = prod_{j != i} (-alpha_j) / (alpha_i - alpha_j) mod q
BigInt lagrange_coefficient(std::span<const BigInt> subset_indices, const BigInt& target_index,
                            const BigInt& q);

// Interpolates q(0) from the first t of `shares`.
BigInt reconstruct_secret(std::span<const SharePoint> shares, std::size_t t, const BigInt& q);

}  // namespace poloc::crypto
