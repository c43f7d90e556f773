#include "poloc/protocol/authority.hpp"

#include "poloc/errors.hpp"

namespace poloc::protocol {

TrustedAuthority::TrustedAuthority(crypto::GroupKeyMaterial keys) : keys_(std::move(keys)) {}

RsuConfig TrustedAuthority::rsu_config(RsuId id, std::set<RsuId> neighbors,
                                       pow::TargetTable table, PowPolicy policy) const {
  if (id == 0 || id > keys_.shares.size()) throw InvalidArgument("RSU id outside the key group");
  RsuConfig cfg;
  cfg.id = id;
  cfg.params = keys_.params;
  cfg.threshold_t = keys_.threshold_t;
  cfg.share = keys_.shares[id - 1];
  cfg.group_public_key = keys_.group_public_key;
  for (std::size_t i = 0; i < keys_.shares.size(); ++i)
    cfg.share_public_keys[keys_.shares[i].index.convert_to<RsuId>()] = keys_.share_public_keys[i];
  cfg.neighbors = std::move(neighbors);
  cfg.ta_public_key = keys_.ta_key.public_key;
  cfg.target_table = std::move(table);
  cfg.pow_policy = policy;
  return cfg;
}

std::vector<TemporaryKey> TrustedAuthority::register_vehicle(std::size_t key_count,
                                                             std::mt19937_64& rng) const {
  std::vector<TemporaryKey> out;
  out.reserve(key_count);
  for (std::size_t i = 0; i < key_count; ++i) {
    TemporaryKey k;
    k.key = crypto::KeyPair::generate(keys_.params, rng);
    k.certificate = crypto::issue_certificate(keys_.ta_key, k.key.public_key, keys_.params);
    out.push_back(std::move(k));
  }
  return out;
}

LocationTag random_tag(RsuId id, std::uint32_t epoch, std::mt19937_64& rng) {
  LocationTag t;
  t.rsu_id = id;
  t.epoch = epoch;
  for (std::size_t i = 0; i < kTagBytes; i += 8) {
    std::uint64_t w = rng();
    for (std::size_t j = 0; j < 8 && i + j < kTagBytes; ++j)
      t.tag[i + j] = static_cast<std::uint8_t>(w >> (8 * j));
  }
  return t;
}

std::uint32_t epoch_of(std::uint32_t timestamp, std::uint32_t epoch_length) {
  if (epoch_length == 0) throw InvalidArgument("epoch length must be positive");
  return timestamp / epoch_length;
}

}  // namespace poloc::protocol
