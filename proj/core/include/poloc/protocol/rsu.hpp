#pragma once

#include <map>
#include <optional>
#include <set>
#include <string_view>

#include "poloc/pow/target_table.hpp"
#include "poloc/protocol/messages.hpp"

namespace poloc::protocol {

enum class Status {
  accepted,
  invalid_certificate,
  ownership_failed,   // step 4(a)
  pow_failed,         // step 4(b)
  clock_skew,         // step 4(b): arrival not after the last timestamp
  stale_tag,          // prior entry carries a tag that is not current
  session_terminated,
};

std::string_view describe(Status s);

template <class T>
struct Outcome {
  Status status = Status::accepted;
  std::optional<T> value;
  explicit operator bool() const { return status == Status::accepted; }
};

// How an RSU decides step 4(b). `verify` hashes; `external` takes the verdict
// from the caller (the simulator's analytic Poisson model).
enum class PowPolicy { verify, external };

struct RsuConfig {
  RsuId id = 0;
  crypto::GroupParams params;
  std::size_t threshold_t = 1;
  crypto::SharePoint share;
  crypto::GroupElement group_public_key;
  std::map<RsuId, crypto::GroupElement> share_public_keys;
  std::set<RsuId> neighbors;
  crypto::GroupElement ta_public_key;
  pow::TargetTable target_table;
  PowPolicy pow_policy = PowPolicy::verify;
};

// One roadside unit's state machine. Not thread-safe; each RSU is driven by a
// single caller and exchanges messages by value.
class Rsu {
 public:
  Rsu(RsuConfig config, LocationTag tag);

  RsuId id() const { return config_.id; }
  const LocationTag& current_tag() const { return tag_; }
  const RsuConfig& config() const { return config_; }

  // Epoch rotation. Every RSU must also learn the other RSUs' new tags.
  void rotate_tag(LocationTag tag);
  void learn_tag(const LocationTag& tag);
  bool is_current_tag(const TagBytes& tag) const;

  // Step 2 of the exchange: authenticate the certificate and issue T_1.
  Outcome<AuthorizedMessage> handle_initial_request(const InitialRequest& req,
                                                    std::uint32_t now) const;

  // Step 4(a): owner signature under prior.current_pk, every carried share
  // valid under its signer's share key, fresh shares from a neighbour.
  bool verify_ownership(const CheckinMessage& msg) const;

  // Step 4(b): traverse = arrival - last timestamp; the nonce must beat the
  // table target for that traverse time. False on non-positive traverse.
  bool verify_pow(const CheckinMessage& msg, std::uint32_t arrival) const;

  // Steps 4-5: append (now, tag), add this RSU's shares, finalize any m_k
  // that reached t distinct shares. Assumes verification already passed.
  AuthorizedMessage issue_next(const CheckinMessage& msg, std::uint32_t now) const;

  // Runs 4(a), 4(b) and issuance; any failure terminates the session keyed
  // by prior.current_pk. `external_pow` supplies the 4(b) verdict when the
  // policy is PowPolicy::external.
  Outcome<AuthorizedMessage> handle_checkin(const CheckinMessage& msg, std::uint32_t now,
                                            std::optional<bool> external_pow = std::nullopt);

  bool session_terminated(const crypto::GroupElement& pk) const;

 private:
  std::optional<RsuId> issuer_of(const TagBytes& tag) const;
  crypto::SignatureShare sign(const crypto::GroupElement& pk,
                              std::span<const TimestampedEntry> prefix) const;
  void finalize_ready(AuthorizedMessage& msg) const;

  RsuConfig config_;
  LocationTag tag_;
  std::map<TagBytes, RsuId> known_tags_;
  std::set<crypto::BigInt> terminated_;
};

}  // namespace poloc::protocol
