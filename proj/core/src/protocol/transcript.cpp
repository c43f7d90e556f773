#include "poloc/protocol/transcript.hpp"

#include "json.hpp"

namespace poloc::protocol {

using nlohmann::json;

namespace {

std::string element_hex(const crypto::GroupParams& gp, const crypto::GroupElement& e) {
  return to_hex(crypto::encode_element(gp, e));
}

json entries_json(const std::vector<TimestampedEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries)
    out.push_back({{"timestamp", e.timestamp}, {"rsu", e.tag.rsu_id}, {"tag", to_hex(e.tag.tag)}});
  return out;
}

json authorized_json(const crypto::GroupParams& gp, const AuthorizedMessage& msg) {
  json pending = json::array();
  for (const auto& p : msg.pending) {
    json shares = json::array();
    for (const auto& s : p.shares)
      shares.push_back({{"signer", s.share.signer_index.str()},
                        {"issued_at_hop", s.hop},
                        {"value", element_hex(gp, s.share.value)}});
    pending.push_back({{"m", p.entry_count}, {"pk", element_hex(gp, p.pk)}, {"shares", shares}});
  }
  json finalized = json::array();
  for (const auto& f : msg.finalized)
    finalized.push_back({{"m", f.entry_count},
                         {"finalized_at_hop", f.finalized_at_hop},
                         {"signature", element_hex(gp, f.signature.value)}});
  const WireMessage wire = encode_wire(gp, msg);
  return {{"hop", msg.hop()},
          {"current_pk", element_hex(gp, msg.current_pk)},
          {"entries", entries_json(msg.entries)},
          {"pending", pending},
          {"finalized", finalized},
          {"wire", {{"header_bytes", wire.header.size()},
                    {"payload_bytes", wire.payload.size()},
                    {"header_hex", to_hex(wire.header)},
                    {"payload_hex", to_hex(wire.payload)}}}};
}

}  // namespace

void Transcript::initial_request(RsuId to, const InitialRequest& req) {
  json j{{"step", "initial_request"},
         {"to_rsu", to},
         {"pk", element_hex(params_, req.pk)},
         {"certificate", element_hex(params_, req.certificate.ta_signature.value)}};
  steps_.push_back({j.dump(), "vehicle -> R" + std::to_string(to) + ": initial request with certified PK"});
}

void Transcript::authorized(RsuId from, const AuthorizedMessage& msg) {
  json j = authorized_json(params_, msg);
  j["step"] = "authorized_message";
  j["from_rsu"] = from;
  std::string text = "R" + std::to_string(from) + " -> vehicle: T" + std::to_string(msg.hop()) +
                     " (" + std::to_string(msg.entries.size()) + " entries, " +
                     std::to_string(msg.pending.size()) + " pending";
  for (const auto& f : msg.finalized)
    if (f.finalized_at_hop == msg.hop()) text += ", m" + std::to_string(f.entry_count) + " finalized";
  text += ")";
  steps_.push_back({j.dump(), text});
}

void Transcript::checkin(RsuId to, const CheckinMessage& msg) {
  json j{{"step", "checkin"},
         {"to_rsu", to},
         {"prior_hop", msg.prior.hop()},
         {"pow_nonce", msg.pow_nonce},
         {"next_pk", element_hex(params_, msg.next_pk)},
         {"owner_signature", element_hex(params_, msg.owner_signature.value)},
         {"wire_bytes", encode_wire(params_, msg).size()}};
  steps_.push_back({j.dump(), "vehicle -> R" + std::to_string(to) + ": check-in for T" +
                                  std::to_string(msg.prior.hop()) + ", nonce " +
                                  std::to_string(msg.pow_nonce)});
}

void Transcript::rejected(RsuId by, Status status) {
  json j{{"step", "rejected"}, {"by_rsu", by}, {"reason", std::string(describe(status))}};
  steps_.push_back({j.dump(), "R" + std::to_string(by) + " rejects: " + std::string(describe(status))});
}

void Transcript::note(const std::string& text) {
  json j{{"step", "note"}, {"text", text}};
  steps_.push_back({j.dump(), text});
}

std::string Transcript::to_json() const {
  json out = json::array();
  for (const auto& s : steps_) out.push_back(json::parse(s.json));
  return out.dump(2) + "\n";
}

std::string Transcript::to_text() const {
  std::string out;
  for (const auto& s : steps_) out += s.text + "\n";
  return out;
}

}  // namespace poloc::protocol
