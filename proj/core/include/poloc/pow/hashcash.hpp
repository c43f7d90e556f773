#pragma once

#include <cstdint>
#include <span>

#include "poloc/bytes.hpp"
#include "poloc/crypto/field.hpp"

namespace poloc::pow {

using crypto::BigInt;

// Puzzle output space N = 2^output_bits. The default is the full SHA-256
// range; smaller widths take the top bits of the digest, which lets
// real-hashing experiments finish in seconds.
inline constexpr unsigned kFullOutputBits = 256;

BigInt output_space(unsigned output_bits);

struct Target {
  BigInt value;  // K, 0 <= K < N
  unsigned output_bits = kFullOutputBits;

  // Throws InvalidArgument unless 0 <= K < 2^output_bits and 1 <= bits <= 256.
  void validate() const;
  friend bool operator==(const Target&, const Target&) = default;
};

struct PowSolution {
  bool valid = false;
  std::uint64_t nonce = 0;
  BigInt achieved_value;
};

// H(nonce_be8 || H(seed)) reduced to the top `output_bits` bits.
BigInt puzzle_value(std::span<const std::uint8_t> seed, std::uint64_t nonce,
                    unsigned output_bits);

// Same, given the precomputed inner digest H(seed).
BigInt puzzle_value_from_inner(const Digest& inner, std::uint64_t nonce, unsigned output_bits);

// Tries nonces 0..hash_budget-1 and keeps the smallest value (ties keep the
// lower nonce). `valid` reports whether that value is below the target.
PowSolution solve_puzzle(std::span<const std::uint8_t> seed, const Target& target,
                         std::uint64_t hash_budget);

// Best nonce within the budget irrespective of any target.
PowSolution find_best_nonce(std::span<const std::uint8_t> seed, std::uint64_t hash_budget,
                            unsigned output_bits);

bool verify_puzzle(std::span<const std::uint8_t> seed, std::uint64_t nonce, const Target& target);

}  // namespace poloc::pow
