#pragma once

#include <compare>
#include <string_view>

#include "poloc/crypto/field.hpp"

namespace poloc::crypto {

enum class BackendKind { exponent_transparent, external_pairing };

// An element of the cyclic group G of prime order q.
//
// The exponent-transparent backend stores g^x as x (mod q). Every element in
// this system is produced by hashing to the group or by exponentiation, so
// the discrete log is always known and pairings can be evaluated exactly.
// This keeps the threshold-signature algebra checkable but offers no hardness:
// it is a test/simulation backend, not a secure one.
class GroupElement {
 public:
  GroupElement() = default;  // identity
  static GroupElement from_exponent(BigInt x) {
    GroupElement e;
    e.log_ = std::move(x);
    return e;
  }

  const BigInt& exponent() const { return log_; }
  bool is_identity() const { return log_ == 0; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  BigInt log_ = 0;
};

// Target-group value e(a, b). Stored as a discrete log of e(g, g).
struct PairingValue {
  BigInt exponent;
  friend bool operator==(const PairingValue&, const PairingValue&) = default;
};

struct GroupParams {
  BigInt prime_order_q;
  GroupElement generator_g = GroupElement::from_exponent(1);
  BackendKind backend_kind = BackendKind::exponent_transparent;

  // secp256k1 group order; a well-known 256-bit prime.
  static GroupParams default_256();
  // Small prime order for hand-checkable arithmetic (e.g. q = 17).
  static GroupParams with_order(BigInt q);

  std::size_t element_width() const { return byte_width(prime_order_q); }

  // Throws InvalidArgument if q is not prime, g is the identity, or the
  // backend is not available in this build.
  void validate() const;
};

GroupElement identity();
GroupElement mul(const GroupParams& gp, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupParams& gp, const GroupElement& a);
GroupElement exp(const GroupParams& gp, const GroupElement& base, const BigInt& e);
// g^x
GroupElement generator_pow(const GroupParams& gp, const BigInt& x);
PairingValue pairing(const GroupParams& gp, const GroupElement& a, const GroupElement& b);

// Fixed-width big-endian encoding (width = byte length of q).
Bytes encode_element(const GroupParams& gp, const GroupElement& e);
GroupElement decode_element(const GroupParams& gp, std::span<const std::uint8_t> data);

// g^{SHA-256(message) mod q}.
GroupElement hash_to_group(std::span<const std::uint8_t> message, const GroupParams& gp);
inline GroupElement hash_to_group(std::string_view message, const GroupParams& gp) {
  return hash_to_group(
      std::span(reinterpret_cast<const std::uint8_t*>(message.data()), message.size()), gp);
}

}  // namespace poloc::crypto
