#include "poloc/io/trajectory_json.hpp"

#include <algorithm>

#include "json.hpp"
#include "poloc/errors.hpp"

namespace poloc::io {

using nlohmann::json;

protocol::TagBytes rsu_tag(std::uint32_t rsu_id) {
  Bytes seed;
  for (char c : std::string_view("rsu-tag")) seed.push_back(static_cast<std::uint8_t>(c));
  put_u32_be(seed, rsu_id);
  const Digest d = sha256(seed);
  protocol::TagBytes tag{};
  std::copy_n(d.begin(), tag.size(), tag.begin());
  return tag;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw FormatError("trajectory file: " + where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

std::uint64_t unsigned_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_unsigned()) fail(where, std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Bytes hex_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) fail(where, std::string("\"") + key + "\" must be a hex string");
  try {
    return from_hex(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(where, std::string("\"") + key + "\": " + e.what());
  }
}

}  // namespace

TrajectorySet parse_trajectories(std::string_view text, const crypto::GroupParams& gp) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("trajectory file is not valid JSON: ") + e.what());
  }
  const json* list = &doc;
  if (doc.is_object()) list = &field(doc, "trajectories", "top level");
  if (!list->is_array()) fail("top level", "expected an array of trajectories");

  TrajectorySet out;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const json& tj = (*list)[i];
    std::string where = "trajectory " + std::to_string(i);
    if (!tj.is_object()) fail(where, "expected an object");
    protocol::Trajectory t;
    t.id = tj.contains("id") ? (tj["id"].is_string() ? tj["id"].get<std::string>() : tj["id"].dump())
                             : std::to_string(i + 1);
    const json& entries = field(tj, "entries", where);
    if (!entries.is_array()) fail(where, "\"entries\" must be an array");
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const json& ej = entries[k];
      std::string ew = where + " entry " + std::to_string(k);
      protocol::TimestampedEntry e;
      auto ts = unsigned_field(ej, "timestamp", ew);
      if (ts > 0xffffffffu) fail(ew, "timestamp exceeds 32 bits");
      e.timestamp = static_cast<std::uint32_t>(ts);
      if (ej.contains("rsu")) {
        auto id = unsigned_field(ej, "rsu", ew);
        if (id > 0xffffffffu) fail(ew, "rsu id exceeds 32 bits");
        e.tag.rsu_id = static_cast<std::uint32_t>(id);
      }
      if (ej.contains("tag")) {
        Bytes tag = hex_field(ej, "tag", ew);
        if (tag.size() != protocol::kTagBytes) fail(ew, "tag must be 20 bytes");
        std::copy(tag.begin(), tag.end(), e.tag.tag.begin());
      } else if (ej.contains("rsu")) {
        e.tag.tag = rsu_tag(e.tag.rsu_id);
      } else {
        fail(ew, "needs \"tag\" or \"rsu\"");
      }
      t.entries.push_back(e);
    }
    if (tj.contains("proofs")) {
      const json& proofs = tj["proofs"];
      if (!proofs.is_array()) fail(where, "\"proofs\" must be an array");
      for (std::size_t k = 0; k < proofs.size(); ++k) {
        std::string pw = where + " proof " + std::to_string(k);
        protocol::LocationProof p;
        p.entry_count = unsigned_field(proofs[k], "m", pw);
        try {
          p.pk = crypto::decode_element(gp, hex_field(proofs[k], "pk", pw));
          p.signature.value = crypto::decode_element(gp, hex_field(proofs[k], "signature", pw));
        } catch (const FormatError&) {
          throw;
        } catch (const std::exception& e) {
          fail(pw, e.what());
        }
        if (proofs[k].contains("finalized_at_hop"))
          p.finalized_at_hop = unsigned_field(proofs[k], "finalized_at_hop", pw);
        t.proofs.push_back(p);
      }
    }
    std::optional<detection::Label> label;
    if (tj.contains("label")) {
      const json& l = tj["label"];
      if (l == "actual") label = detection::Label::actual;
      else if (l == "sybil") label = detection::Label::sybil;
      else fail(where, "\"label\" must be \"actual\" or \"sybil\"");
    }
    out.trajectories.push_back(std::move(t));
    out.labels.push_back(label);
  }
  return out;
}

std::string trajectories_to_json(const std::vector<protocol::Trajectory>& trajectories,
                                 const crypto::GroupParams& gp,
                                 const std::vector<detection::Label>* labels) {
  json list = json::array();
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& t = trajectories[i];
    json entries = json::array();
    for (const auto& e : t.entries)
      entries.push_back({{"timestamp", e.timestamp}, {"rsu", e.tag.rsu_id}, {"tag", to_hex(e.tag.tag)}});
    json proofs = json::array();
    for (const auto& p : t.proofs)
      proofs.push_back({{"m", p.entry_count},
                        {"pk", to_hex(crypto::encode_element(gp, p.pk))},
                        {"signature", to_hex(crypto::encode_element(gp, p.signature.value))},
                        {"finalized_at_hop", p.finalized_at_hop}});
    json tj{{"id", t.id}, {"entries", entries}, {"proofs", proofs}};
    if (labels && i < labels->size()) tj["label"] = detection::to_string((*labels)[i]);
    list.push_back(tj);
  }
  return json{{"trajectories", list}}.dump(1) + "\n";
}

}  // namespace poloc::io
