#pragma once

#include <random>
#include <set>

#include "poloc/crypto/keys.hpp"
#include "poloc/protocol/rsu.hpp"
#include "poloc/protocol/vehicle.hpp"

namespace poloc::protocol {

// The trusted authority after system initialization: holds the dealt group
// key material and certifies vehicle temporary keys.
class TrustedAuthority {
 public:
  explicit TrustedAuthority(crypto::GroupKeyMaterial keys);

  const crypto::GroupKeyMaterial& keys() const { return keys_; }
  const crypto::GroupParams& params() const { return keys_.params; }

  // Configuration handed to RSU `id` (1-based, equal to its share index).
  RsuConfig rsu_config(RsuId id, std::set<RsuId> neighbors, pow::TargetTable table,
                       PowPolicy policy = PowPolicy::verify) const;

  std::vector<TemporaryKey> register_vehicle(std::size_t key_count, std::mt19937_64& rng) const;

 private:
  crypto::GroupKeyMaterial keys_;
};

LocationTag random_tag(RsuId id, std::uint32_t epoch, std::mt19937_64& rng);

// Tags rotate once per event period. Throws InvalidArgument on a zero length.
inline constexpr std::uint32_t kDefaultEpochLength = 3600;
std::uint32_t epoch_of(std::uint32_t timestamp, std::uint32_t epoch_length);

}  // namespace poloc::protocol
