#include "poloc/crypto/field.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include "poloc/errors.hpp"

namespace poloc::crypto {

BigInt mod(const BigInt& a, const BigInt& q) {
  BigInt r = a % q;
  if (r < 0) r += q;
  return r;
}

BigInt mod_add(const BigInt& a, const BigInt& b, const BigInt& q) { return mod(a + b, q); }
BigInt mod_sub(const BigInt& a, const BigInt& b, const BigInt& q) { return mod(a - b, q); }
BigInt mod_mul(const BigInt& a, const BigInt& b, const BigInt& q) { return mod(a * b, q); }

BigInt mod_inv(const BigInt& a, const BigInt& q) {
  BigInt r0 = q, r1 = mod(a, q);
  BigInt s0 = 0, s1 = 1;
  while (r1 != 0) {
    BigInt quot = r0 / r1;
    BigInt r2 = r0 - quot * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    BigInt s2 = s0 - quot * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0 != 1) throw InvalidArgument("value has no inverse modulo q");
  return mod(s0, q);
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  std::mt19937_64 rng(0x5eed);
  return boost::multiprecision::miller_rabin_test(n, 32, rng);
}

BigInt random_below(const BigInt& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw InvalidArgument("random_below: bound must be positive");
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t excess = words * 64 - bits;
  for (;;) {
    BigInt v = 0;
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t w = rng();
      if (i == 0 && excess > 0) w >>= excess;
      v = (v << 64) | w;
    }
    if (v < bound) return v;
  }
}

Bytes to_bytes_be(const BigInt& v, std::size_t width) {
  if (v < 0) throw InvalidArgument("to_bytes_be: negative value");
  Bytes out(width, 0);
  BigInt x = v;
  for (std::size_t i = 0; i < width; ++i) {
    out[width - 1 - i] = static_cast<std::uint8_t>(x & 0xff);
    x >>= 8;
  }
  if (x != 0) throw InvalidArgument("to_bytes_be: value wider than requested width");
  return out;
}

Bytes to_bytes_be(const BigInt& v) { return to_bytes_be(v, v == 0 ? 1 : byte_width(v)); }

BigInt from_bytes_be(std::span<const std::uint8_t> data) {
  BigInt v = 0;
  for (auto b : data) v = (v << 8) | b;
  return v;
}

std::size_t byte_width(const BigInt& q) {
  if (q <= 0) return 1;
  return (boost::multiprecision::msb(q) + 8) / 8;
}

}  // namespace poloc::crypto
