#include "poloc/pow/hashcash.hpp"

#include <openssl/sha.h>

#include "poloc/errors.hpp"

namespace poloc::pow {

BigInt output_space(unsigned output_bits) {
  if (output_bits == 0 || output_bits > kFullOutputBits)
    throw InvalidArgument("output bits must be in [1, 256]");
  return BigInt(1) << output_bits;
}

void Target::validate() const {
  BigInt n = output_space(output_bits);
  if (value < 0 || value >= n) throw InvalidArgument("target must satisfy 0 <= K < N");
}

namespace {

Digest outer_digest(const Digest& inner, std::uint64_t nonce) {
  std::uint8_t buf[8 + 32];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(nonce >> (56 - 8 * i));
  std::copy(inner.begin(), inner.end(), buf + 8);
  Digest outer{};
  SHA256(buf, sizeof buf, outer.data());
  return outer;
}

// Compares the top `bits` bits of two digests as big-endian integers.
bool truncated_less(const Digest& a, const Digest& b, unsigned bits) {
  const unsigned full = bits / 8;
  for (unsigned i = 0; i < full; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  const unsigned rest = bits % 8;
  if (rest == 0) return false;
  const std::uint8_t mask = static_cast<std::uint8_t>(0xff << (8 - rest));
  return (a[full] & mask) < (b[full] & mask);
}

BigInt truncate(const Digest& d, unsigned output_bits) {
  return crypto::from_bytes_be(d) >> (kFullOutputBits - output_bits);
}

}  // namespace

BigInt puzzle_value_from_inner(const Digest& inner, std::uint64_t nonce, unsigned output_bits) {
  return truncate(outer_digest(inner, nonce), output_bits);
}

BigInt puzzle_value(std::span<const std::uint8_t> seed, std::uint64_t nonce,
                    unsigned output_bits) {
  return puzzle_value_from_inner(sha256(seed), nonce, output_bits);
}

PowSolution find_best_nonce(std::span<const std::uint8_t> seed, std::uint64_t hash_budget,
                            unsigned output_bits) {
  if (hash_budget == 0) throw InvalidArgument("hash budget must be at least 1");
  output_space(output_bits);
  const Digest inner = sha256(seed);
  PowSolution best;
  Digest best_digest = outer_digest(inner, 0);
  for (std::uint64_t n = 1; n < hash_budget; ++n) {
    Digest d = outer_digest(inner, n);
    if (truncated_less(d, best_digest, output_bits)) {
      best_digest = d;
      best.nonce = n;
    }
  }
  best.achieved_value = truncate(best_digest, output_bits);
  return best;
}

PowSolution solve_puzzle(std::span<const std::uint8_t> seed, const Target& target,
                         std::uint64_t hash_budget) {
  target.validate();
  PowSolution s = find_best_nonce(seed, hash_budget, target.output_bits);
  s.valid = s.achieved_value < target.value;
  return s;
}

bool verify_puzzle(std::span<const std::uint8_t> seed, std::uint64_t nonce, const Target& target) {
  target.validate();
  return puzzle_value(seed, nonce, target.output_bits) < target.value;
}

}  // namespace poloc::pow
