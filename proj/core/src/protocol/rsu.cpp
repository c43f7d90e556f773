#include "poloc/protocol/rsu.hpp"

#include <algorithm>

#include "poloc/errors.hpp"
#include "poloc/pow/hashcash.hpp"

namespace poloc::protocol {

std::string_view describe(Status s) {
  switch (s) {
    case Status::accepted: return "accepted";
    case Status::invalid_certificate: return "certificate verification failed";
    case Status::ownership_failed: return "ownership verification failed";
    case Status::pow_failed: return "PoW verification failed";
    case Status::clock_skew: return "PoW verification failed: non-positive traverse time";
    case Status::stale_tag: return "stale or unknown location tag";
    case Status::session_terminated: return "session terminated";
  }
  return "unknown";
}

Rsu::Rsu(RsuConfig config, LocationTag tag) : config_(std::move(config)), tag_(tag) {
  if (config_.threshold_t == 0) throw InvalidThreshold("RSU threshold must be at least 1");
  if (config_.share.index != config_.id) throw InvalidArgument("RSU id must equal its share index");
  tag_.rsu_id = config_.id;
  known_tags_[tag_.tag] = config_.id;
}

void Rsu::rotate_tag(LocationTag tag) {
  std::erase_if(known_tags_, [&](const auto& kv) { return kv.second == config_.id; });
  tag_ = tag;
  tag_.rsu_id = config_.id;
  known_tags_[tag_.tag] = config_.id;
}

void Rsu::learn_tag(const LocationTag& tag) {
  std::erase_if(known_tags_, [&](const auto& kv) { return kv.second == tag.rsu_id; });
  known_tags_[tag.tag] = tag.rsu_id;
}

bool Rsu::is_current_tag(const TagBytes& tag) const { return known_tags_.contains(tag); }

std::optional<RsuId> Rsu::issuer_of(const TagBytes& tag) const {
  auto it = known_tags_.find(tag);
  if (it == known_tags_.end()) return std::nullopt;
  return it->second;
}

crypto::SignatureShare Rsu::sign(const crypto::GroupElement& pk,
                                 std::span<const TimestampedEntry> prefix) const {
  return crypto::sign_share(config_.share, encode_location_message(config_.params, pk, prefix),
                            config_.params);
}

void Rsu::finalize_ready(AuthorizedMessage& msg) const {
  auto ready = [&](const PendingProof& p) { return p.shares.size() >= config_.threshold_t; };
  for (const auto& p : msg.pending) {
    if (!ready(p)) continue;
    std::vector<crypto::SignatureShare> shares;
    for (const auto& s : p.shares) shares.push_back(s.share);
    msg.finalized.push_back({p.entry_count, p.pk,
                             crypto::combine_shares(shares, config_.threshold_t, config_.params),
                             msg.hop()});
  }
  std::erase_if(msg.pending, ready);
}

Outcome<AuthorizedMessage> Rsu::handle_initial_request(const InitialRequest& req,
                                                       std::uint32_t now) const {
  if (req.certificate.subject_pk != req.pk ||
      !crypto::verify_certificate(config_.ta_public_key, req.certificate, config_.params))
    return {Status::invalid_certificate, std::nullopt};

  AuthorizedMessage msg;
  msg.current_pk = req.pk;
  msg.entries.push_back({now, tag_});
  PendingProof m1{1, req.pk, {}};
  m1.shares.push_back({sign(req.pk, msg.entries), 1});
  msg.pending.push_back(std::move(m1));
  finalize_ready(msg);
  return {Status::accepted, std::move(msg)};
}

bool Rsu::verify_ownership(const CheckinMessage& msg) const {
  const auto& gp = config_.params;
  const auto& prior = msg.prior;
  if (prior.entries.empty()) return false;
  if (!crypto::verify_signature(prior.current_pk,
                                owner_payload(gp, prior, msg.pow_nonce, msg.next_pk),
                                msg.owner_signature, gp))
    return false;

  auto issuer = issuer_of(prior.entries.back().tag.tag);
  for (const auto& p : prior.pending) {
    if (p.entry_count == 0 || p.entry_count > prior.entries.size()) return false;
    Bytes m = encode_location_message(
        gp, p.pk, std::span(prior.entries).first(p.entry_count));
    for (const auto& s : p.shares) {
      if (s.share.signer_index <= 0 || s.share.signer_index > 0xffffffffu) return false;
      auto it = config_.share_public_keys.find(s.share.signer_index.convert_to<RsuId>());
      if (it == config_.share_public_keys.end()) return false;
      if (!crypto::verify_share(it->second, m, s.share, gp)) return false;
      if (s.hop == prior.hop()) {
        // Shares issued at the last hop must come from the neighbour that
        // issued the last entry.
        auto signer = s.share.signer_index.convert_to<RsuId>();
        if (!config_.neighbors.contains(signer)) return false;
        if (issuer && *issuer != signer) return false;
      }
    }
  }
  return true;
}

bool Rsu::verify_pow(const CheckinMessage& msg, std::uint32_t arrival) const {
  if (msg.prior.entries.empty()) return false;
  const std::uint32_t issued = msg.prior.entries.back().timestamp;
  if (arrival <= issued) return false;
  const pow::Target target =
      pow::lookup_target(config_.target_table, static_cast<double>(arrival - issued));
  return pow::verify_puzzle(encode_authorized(config_.params, msg.prior), msg.pow_nonce, target);
}

AuthorizedMessage Rsu::issue_next(const CheckinMessage& msg, std::uint32_t now) const {
  AuthorizedMessage next = msg.prior;
  next.current_pk = msg.next_pk;
  next.entries.push_back({now, tag_});
  const std::size_t hop = next.hop();

  const crypto::BigInt my_index = config_.share.index;
  for (auto& p : next.pending) {
    bool signed_already = std::any_of(p.shares.begin(), p.shares.end(), [&](const CollectedShare& s) {
      return s.share.signer_index == my_index;
    });
    if (signed_already) continue;
    p.shares.push_back({sign(p.pk, std::span(next.entries).first(p.entry_count)), hop});
  }
  PendingProof newest{hop, msg.next_pk, {}};
  newest.shares.push_back({sign(msg.next_pk, next.entries), hop});
  next.pending.push_back(std::move(newest));
  finalize_ready(next);
  return next;
}

Outcome<AuthorizedMessage> Rsu::handle_checkin(const CheckinMessage& msg, std::uint32_t now,
                                               std::optional<bool> external_pow) {
  const auto& session = msg.prior.current_pk.exponent();
  if (terminated_.contains(session)) return {Status::session_terminated, std::nullopt};

  auto reject = [&](Status s) -> Outcome<AuthorizedMessage> {
    terminated_.insert(session);
    return {s, std::nullopt};
  };

  if (msg.prior.entries.empty() || !is_current_tag(msg.prior.entries.back().tag.tag))
    return reject(Status::stale_tag);
  if (!verify_ownership(msg)) return reject(Status::ownership_failed);
  if (now <= msg.prior.entries.back().timestamp) return reject(Status::clock_skew);

  bool pow_ok = false;
  if (config_.pow_policy == PowPolicy::external) {
    if (!external_pow) throw InvalidArgument("external PoW policy needs a verdict");
    pow_ok = *external_pow;
  } else {
    pow_ok = verify_pow(msg, now);
  }
  if (!pow_ok) return reject(Status::pow_failed);

  return {Status::accepted, issue_next(msg, now)};
}

bool Rsu::session_terminated(const crypto::GroupElement& pk) const {
  return terminated_.contains(pk.exponent());
}

}  // namespace poloc::protocol
