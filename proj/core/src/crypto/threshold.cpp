#include "poloc/crypto/threshold.hpp"

#include <string>

#include "poloc/errors.hpp"

namespace poloc::crypto {

SignatureShare sign_share(const SharePoint& share, std::span<const std::uint8_t> message,
                          const GroupParams& gp) {
  return {share.index, exp(gp, hash_to_group(message, gp), share.value)};
}

StandardSignature combine_shares(std::span<const SignatureShare> shares, std::size_t t,
                                 const GroupParams& gp) {
  if (t == 0) throw InvalidThreshold("threshold must be at least 1");
  if (shares.size() < t)
    throw InsufficientShares("need " + std::to_string(t) + " signature shares, got " +
                             std::to_string(shares.size()));
  for (std::size_t i = 0; i < shares.size(); ++i)
    for (std::size_t j = i + 1; j < shares.size(); ++j)
      if (mod(shares[i].signer_index, gp.prime_order_q) ==
          mod(shares[j].signer_index, gp.prime_order_q))
        throw DuplicateIndex("duplicate signer index in signature shares");

  auto chosen = shares.first(t);
  std::vector<BigInt> indices;
  indices.reserve(t);
  for (const auto& s : chosen) indices.push_back(s.signer_index);

  GroupElement acc = identity();
  for (const auto& s : chosen) {
    BigInt delta = lagrange_coefficient(indices, s.signer_index, gp.prime_order_q);
    acc = mul(gp, acc, exp(gp, s.value, delta));
  }
  return {acc};
}

bool verify_signature(const GroupElement& public_key, std::span<const std::uint8_t> message,
                      const StandardSignature& sig, const GroupParams& gp) {
  return pairing(gp, sig.value, gp.generator_g) ==
         pairing(gp, hash_to_group(message, gp), public_key);
}

bool verify_share(const GroupElement& share_public_key, std::span<const std::uint8_t> message,
                  const SignatureShare& share, const GroupParams& gp) {
  return verify_signature(share_public_key, message, StandardSignature{share.value}, gp);
}

KeyPair KeyPair::generate(const GroupParams& gp, std::mt19937_64& rng) {
  BigInt sk;
  do {
    sk = random_below(gp.prime_order_q, rng);
  } while (sk == 0);
  return from_secret(gp, std::move(sk));
}

KeyPair KeyPair::from_secret(const GroupParams& gp, BigInt secret) {
  KeyPair k;
  k.public_key = generator_pow(gp, secret);
  k.secret = std::move(secret);
  return k;
}

StandardSignature sign(const KeyPair& key, std::span<const std::uint8_t> message,
                       const GroupParams& gp) {
  return {exp(gp, hash_to_group(message, gp), key.secret)};
}

Bytes certificate_payload(const GroupParams& gp, const GroupElement& subject_pk) {
  Bytes enc = encode_element(gp, subject_pk);
  Bytes out;
  out.reserve(4 + enc.size());
  put_u32_be(out, static_cast<std::uint32_t>(enc.size()));
  put_bytes(out, enc);
  return out;
}

Certificate issue_certificate(const KeyPair& ta_key, const GroupElement& vehicle_pk,
                              const GroupParams& gp) {
  return {vehicle_pk, sign(ta_key, certificate_payload(gp, vehicle_pk), gp)};
}

bool verify_certificate(const GroupElement& ta_pk, const Certificate& cert,
                        const GroupParams& gp) {
  return verify_signature(ta_pk, certificate_payload(gp, cert.subject_pk), cert.ta_signature, gp);
}

}  // namespace poloc::crypto
