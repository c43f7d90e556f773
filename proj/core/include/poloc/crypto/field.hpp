#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <span>

#include "poloc/bytes.hpp"

namespace poloc::crypto {

using BigInt = boost::multiprecision::cpp_int;

// Arithmetic in Z_q. Inputs need not be reduced; outputs always are.
BigInt mod(const BigInt& a, const BigInt& q);
BigInt mod_add(const BigInt& a, const BigInt& b, const BigInt& q);
BigInt mod_sub(const BigInt& a, const BigInt& b, const BigInt& q);
BigInt mod_mul(const BigInt& a, const BigInt& b, const BigInt& q);
// Throws InvalidArgument when a is not invertible mod q.
BigInt mod_inv(const BigInt& a, const BigInt& q);

bool is_probable_prime(const BigInt& n);

// Uniform in [0, bound) by rejection sampling.
BigInt random_below(const BigInt& bound, std::mt19937_64& rng);

// Big-endian, left-padded to `width` bytes. Throws if the value does not fit.
Bytes to_bytes_be(const BigInt& v, std::size_t width);
Bytes to_bytes_be(const BigInt& v);  // minimal width, "0" encodes as one zero byte
BigInt from_bytes_be(std::span<const std::uint8_t> data);

std::size_t byte_width(const BigInt& q);

}  // namespace poloc::crypto
