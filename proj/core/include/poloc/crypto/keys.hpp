#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "poloc/crypto/threshold.hpp"

namespace poloc::crypto {

// Everything the trusted authority produces at system initialization for one
// RSU group: the (t, n) sharing of SK, the matching public keys, and the TA's
// own certificate-signing key.
struct GroupKeyMaterial {
  GroupParams params;
  std::size_t threshold_t = 0;
  std::size_t total_n = 0;
  GroupElement group_public_key;
  std::vector<SharePoint> shares;
  std::vector<GroupElement> share_public_keys;  // PK_i = g^{SK_i}, same order as shares
  KeyPair ta_key;
};

GroupKeyMaterial deal_group_keys(const GroupParams& gp, std::size_t t, std::size_t n,
                                 std::uint64_t seed);

// Key file layout (all integers big-endian):
//   "POLOCKF1"                      8-byte magic
//   field*                          each field = u32 length || magnitude bytes
//     q, g exponent, t, n, PK exponent,
//     n x (alpha_i, d_i, PK_i exponent),
//     TA secret, TA public key exponent
Bytes serialize_key_material(const GroupKeyMaterial& km);
GroupKeyMaterial deserialize_key_material(std::span<const std::uint8_t> data);

void write_key_file(const std::filesystem::path& path, const GroupKeyMaterial& km);
GroupKeyMaterial read_key_file(const std::filesystem::path& path);

}  // namespace poloc::crypto
