#include "poloc/protocol/messages.hpp"

#include <algorithm>

namespace poloc::protocol {

namespace {

void put_entry(Bytes& out, const TimestampedEntry& e) {
  put_u32_be(out, e.timestamp);
  put_bytes(out, e.tag.tag);
}

void put_element(Bytes& out, const crypto::GroupParams& gp, const crypto::GroupElement& e) {
  put_bytes(out, crypto::encode_element(gp, e));
}

// Low 20 bytes of the element, left-padded when the group is narrower.
void put_truncated(Bytes& out, const crypto::GroupParams& gp, const crypto::GroupElement& e) {
  Bytes full = crypto::encode_element(gp, e);
  if (full.size() >= kSignatureItemBytes) {
    out.insert(out.end(), full.end() - kSignatureItemBytes, full.end());
  } else {
    out.insert(out.end(), kSignatureItemBytes - full.size(), 0);
    put_bytes(out, full);
  }
}

std::uint8_t small_index(const crypto::BigInt& index) {
  return static_cast<std::uint8_t>(index & 0xff);
}

}  // namespace

Bytes encode_location_message(const crypto::GroupParams& gp, const crypto::GroupElement& pk,
                              std::span<const TimestampedEntry> entries) {
  Bytes out;
  out.reserve(gp.element_width() + entries.size() * kEntryBytes);
  put_element(out, gp, pk);
  for (const auto& e : entries) put_entry(out, e);
  return out;
}

Bytes encode_authorized(const crypto::GroupParams& gp, const AuthorizedMessage& msg) {
  Bytes out;
  put_element(out, gp, msg.current_pk);
  put_u16_be(out, static_cast<std::uint16_t>(msg.entries.size()));
  for (const auto& e : msg.entries) put_entry(out, e);

  put_u8(out, static_cast<std::uint8_t>(msg.pending.size()));
  for (const auto& p : msg.pending) {
    put_u16_be(out, static_cast<std::uint16_t>(p.entry_count));
    put_element(out, gp, p.pk);
    put_u8(out, static_cast<std::uint8_t>(p.shares.size()));
    for (const auto& s : p.shares) {
      put_bytes(out, crypto::to_bytes_be(s.share.signer_index, gp.element_width()));
      put_element(out, gp, s.share.value);
    }
  }

  std::vector<const LocationProof*> fresh;
  for (const auto& f : msg.finalized)
    if (f.finalized_at_hop == msg.hop()) fresh.push_back(&f);
  put_u8(out, static_cast<std::uint8_t>(fresh.size()));
  for (const auto* f : fresh) {
    put_u16_be(out, static_cast<std::uint16_t>(f->entry_count));
    put_element(out, gp, f->pk);
    put_element(out, gp, f->signature.value);
  }
  return out;
}

Bytes owner_payload(const crypto::GroupParams& gp, const AuthorizedMessage& prior,
                    std::uint64_t nonce, const crypto::GroupElement& next_pk) {
  Bytes out = encode_authorized(gp, prior);
  put_u64_be(out, nonce);
  put_element(out, gp, next_pk);
  return out;
}

std::size_t fresh_signature_items(const AuthorizedMessage& msg) {
  std::size_t n = 0;
  for (const auto& p : msg.pending)
    n += static_cast<std::size_t>(std::count_if(p.shares.begin(), p.shares.end(),
                                                [&](const CollectedShare& s) { return s.hop == msg.hop(); }));
  for (const auto& f : msg.finalized)
    if (f.finalized_at_hop == msg.hop()) ++n;
  return n;
}

WireMessage encode_wire(const crypto::GroupParams& gp, const AuthorizedMessage& msg) {
  WireMessage w;
  put_element(w.header, gp, msg.current_pk);
  put_u16_be(w.header, static_cast<std::uint16_t>(msg.entries.size()));
  put_u8(w.header, static_cast<std::uint8_t>(fresh_signature_items(msg)));

  for (const auto& e : msg.entries) put_entry(w.payload, e);
  // Item metadata (kind, message index, signer) lives in the header.
  for (const auto& f : msg.finalized) {
    if (f.finalized_at_hop != msg.hop()) continue;
    put_u8(w.header, 0);
    put_u16_be(w.header, static_cast<std::uint16_t>(f.entry_count));
    put_truncated(w.payload, gp, f.signature.value);
  }
  for (const auto& p : msg.pending) {
    for (const auto& s : p.shares) {
      if (s.hop != msg.hop()) continue;
      put_u8(w.header, 1);
      put_u16_be(w.header, static_cast<std::uint16_t>(p.entry_count));
      put_u8(w.header, small_index(s.share.signer_index));
      put_truncated(w.payload, gp, s.share.value);
    }
  }
  return w;
}

WireMessage encode_wire(const crypto::GroupParams& gp, const CheckinMessage& msg) {
  WireMessage w = encode_wire(gp, msg.prior);
  put_u64_be(w.header, msg.pow_nonce);
  put_element(w.header, gp, msg.next_pk);
  put_element(w.header, gp, msg.owner_signature.value);
  return w;
}

}  // namespace poloc::protocol
