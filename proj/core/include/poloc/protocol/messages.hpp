#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "poloc/crypto/threshold.hpp"

namespace poloc::protocol {

// An RSU's identifier doubles as its share index alpha_i in the group.
using RsuId = std::uint32_t;
inline constexpr std::size_t kTagBytes = 20;
using TagBytes = std::array<std::uint8_t, kTagBytes>;

// Random per-epoch tag. rsu_id and epoch are local bookkeeping; only the 20
// tag bytes are signed or transmitted.
struct LocationTag {
  RsuId rsu_id = 0;
  TagBytes tag{};
  std::uint32_t epoch = 0;
  friend bool operator==(const LocationTag&, const LocationTag&) = default;
};

struct TimestampedEntry {
  std::uint32_t timestamp = 0;
  LocationTag tag;
  friend bool operator==(const TimestampedEntry&, const TimestampedEntry&) = default;
};

struct CollectedShare {
  crypto::SignatureShare share;
  std::size_t hop = 0;  // entry count of the message that carried it out of the RSU
};

// m_k awaiting threshold signature shares.
struct PendingProof {
  std::size_t entry_count = 0;  // k
  crypto::GroupElement pk;      // PK^k, the key m_k was issued to
  std::vector<CollectedShare> shares;
};

// m_k || sigma(m_k): proof of location for the first k entries.
struct LocationProof {
  std::size_t entry_count = 0;
  crypto::GroupElement pk;
  crypto::StandardSignature signature;
  std::size_t finalized_at_hop = 0;
};

// The authorized message T_h held by a vehicle after hop h.
//
// The vehicle keeps every finalized proof in memory; on the wire only proofs
// finalized at this hop and the issuing RSU's fresh shares are transmitted.
struct AuthorizedMessage {
  crypto::GroupElement current_pk;
  std::vector<TimestampedEntry> entries;
  std::vector<PendingProof> pending;
  std::vector<LocationProof> finalized;

  std::size_t hop() const { return entries.size(); }
};

struct InitialRequest {
  crypto::GroupElement pk;
  crypto::Certificate certificate;
};

// L = (T || S_T || PK_next) || sigma_{SK_current}(T, S_T, PK_next)
struct CheckinMessage {
  AuthorizedMessage prior;
  std::uint64_t pow_nonce = 0;
  crypto::GroupElement next_pk;
  crypto::StandardSignature owner_signature;
};

// m_k = PK^k || (t_1, Tag_1) || ... || (t_k, Tag_k)
// PK as a fixed-width element, each entry as u32 BE timestamp || 20-byte tag.
Bytes encode_location_message(const crypto::GroupParams& gp, const crypto::GroupElement& pk,
                              std::span<const TimestampedEntry> entries);

// Full-width canonical encoding of T as transmitted at this hop (the PoW
// seed and part of the owner-signed payload).
Bytes encode_authorized(const crypto::GroupParams& gp, const AuthorizedMessage& msg);

// Bytes signed by the vehicle's current temporary key.
Bytes owner_payload(const crypto::GroupParams& gp, const AuthorizedMessage& prior,
                    std::uint64_t nonce, const crypto::GroupElement& next_pk);

inline constexpr std::size_t kTimestampBytes = 4;
inline constexpr std::size_t kEntryBytes = kTimestampBytes + kTagBytes;  // 24
inline constexpr std::size_t kSignatureItemBytes = 20;

// Wire accounting. `payload` holds the entries (24 bytes each) and the
// signature items sent at this hop (20-byte truncated elements); `header`
// holds keys, counts, share indices and owner signature material.
struct WireMessage {
  Bytes header;
  Bytes payload;
  std::size_t size() const { return header.size() + payload.size(); }
};

WireMessage encode_wire(const crypto::GroupParams& gp, const AuthorizedMessage& msg);
WireMessage encode_wire(const crypto::GroupParams& gp, const CheckinMessage& msg);

// Number of signature items issued at the message's hop: fresh shares from
// the issuing RSU plus proofs finalized there.
std::size_t fresh_signature_items(const AuthorizedMessage& msg);

// 24 l + 20 t: payload size of a steady-state message (l >= t).
constexpr std::size_t message_size(std::size_t l, std::size_t t) {
  return kEntryBytes * l + kSignatureItemBytes * t;
}

}  // namespace poloc::protocol
