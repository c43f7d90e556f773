#include "poloc/crypto/group.hpp"

#include "poloc/errors.hpp"

namespace poloc::crypto {

GroupParams GroupParams::default_256() {
  GroupParams gp;
  gp.prime_order_q =
      BigInt("0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141");
  return gp;
}

GroupParams GroupParams::with_order(BigInt q) {
  GroupParams gp;
  gp.prime_order_q = std::move(q);
  gp.validate();
  return gp;
}

void GroupParams::validate() const {
  if (backend_kind != BackendKind::exponent_transparent)
    throw InvalidArgument("no external pairing backend is linked into this build");
  if (!is_probable_prime(prime_order_q)) throw InvalidArgument("group order q is not prime");
  if (mod(generator_g.exponent(), prime_order_q) == 0)
    throw InvalidArgument("generator must not be the identity");
}

GroupElement identity() { return {}; }

GroupElement mul(const GroupParams& gp, const GroupElement& a, const GroupElement& b) {
  return GroupElement::from_exponent(mod_add(a.exponent(), b.exponent(), gp.prime_order_q));
}

GroupElement inverse(const GroupParams& gp, const GroupElement& a) {
  return GroupElement::from_exponent(mod_sub(0, a.exponent(), gp.prime_order_q));
}

GroupElement exp(const GroupParams& gp, const GroupElement& base, const BigInt& e) {
  return GroupElement::from_exponent(mod_mul(base.exponent(), e, gp.prime_order_q));
}

GroupElement generator_pow(const GroupParams& gp, const BigInt& x) {
  return exp(gp, gp.generator_g, x);
}

PairingValue pairing(const GroupParams& gp, const GroupElement& a, const GroupElement& b) {
  return {mod_mul(a.exponent(), b.exponent(), gp.prime_order_q)};
}

Bytes encode_element(const GroupParams& gp, const GroupElement& e) {
  return to_bytes_be(e.exponent(), gp.element_width());
}

GroupElement decode_element(const GroupParams& gp, std::span<const std::uint8_t> data) {
  if (data.size() != gp.element_width()) throw FormatError("group element has wrong width");
  BigInt x = from_bytes_be(data);
  if (x >= gp.prime_order_q) throw FormatError("group element out of range");
  return GroupElement::from_exponent(std::move(x));
}

GroupElement hash_to_group(std::span<const std::uint8_t> message, const GroupParams& gp) {
  Digest d = sha256(message);
  return generator_pow(gp, from_bytes_be(d));
}

}  // namespace poloc::crypto
