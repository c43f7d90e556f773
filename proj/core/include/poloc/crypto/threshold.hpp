#pragma once

#include <random>
#include <span>
#include <vector>

#include "poloc/crypto/shamir.hpp"

namespace poloc::crypto {

struct SignatureShare {
  BigInt signer_index;  // alpha_i
  GroupElement value;   // H(m)^{SK_i}
  friend bool operator==(const SignatureShare&, const SignatureShare&) = default;
};

struct StandardSignature {
  GroupElement value;  // H(m)^{SK}
  friend bool operator==(const StandardSignature&, const StandardSignature&) = default;
};

SignatureShare sign_share(const SharePoint& share, std::span<const std::uint8_t> message,
                          const GroupParams& gp);

// Interpolates in the exponent over the first t shares:
// prod sigma_i^{delta_i} = H(m)^{SK}.
StandardSignature combine_shares(std::span<const SignatureShare> shares, std::size_t t,
                                 const GroupParams& gp);

// e(sig, g) == e(H(m), PK)
bool verify_signature(const GroupElement& public_key, std::span<const std::uint8_t> message,
                      const StandardSignature& sig, const GroupParams& gp);

// Same pairing check for one share against PK_i = g^{SK_i}.
bool verify_share(const GroupElement& share_public_key, std::span<const std::uint8_t> message,
                  const SignatureShare& share, const GroupParams& gp);

// A single-signer BLS key pair (TA key, vehicle temporary keys).
struct KeyPair {
  BigInt secret;
  GroupElement public_key;

  static KeyPair generate(const GroupParams& gp, std::mt19937_64& rng);
  static KeyPair from_secret(const GroupParams& gp, BigInt secret);
};

StandardSignature sign(const KeyPair& key, std::span<const std::uint8_t> message,
                       const GroupParams& gp);

struct Certificate {
  GroupElement subject_pk;
  StandardSignature ta_signature;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// u32 big-endian length || big-endian exponent bytes.
Bytes certificate_payload(const GroupParams& gp, const GroupElement& subject_pk);

Certificate issue_certificate(const KeyPair& ta_key, const GroupElement& vehicle_pk,
                              const GroupParams& gp);
bool verify_certificate(const GroupElement& ta_pk, const Certificate& cert,
                        const GroupParams& gp);

}  // namespace poloc::crypto
