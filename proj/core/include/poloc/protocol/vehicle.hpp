#pragma once

#include <optional>
#include <vector>

#include "poloc/pow/hashcash.hpp"
#include "poloc/protocol/messages.hpp"

namespace poloc::protocol {

struct TemporaryKey {
  crypto::KeyPair key;
  crypto::Certificate certificate;
  bool used = false;
};

// Vehicle-side state machine. Each temporary key signs for exactly one hop.
class Vehicle {
 public:
  Vehicle(crypto::GroupParams params, std::vector<TemporaryKey> keys);

  // Step 1 of the exchange. Throws InvalidArgument when every key has been used.
  InitialRequest begin_trajectory();

  // Stores the RSU's reply as the message to chain from.
  void accept(AuthorizedMessage msg);

  // Step 3 of the exchange: spends `hash_budget` hashes seeded by the current T and
  // submits the lowest value found, signed together with a fresh next key.
  CheckinMessage prepare_checkin(std::uint64_t hash_budget,
                                 unsigned output_bits = pow::kFullOutputBits);

  // Same, with a caller-supplied nonce (analytic PoW in simulation).
  CheckinMessage prepare_checkin_with_nonce(std::uint64_t nonce);

  const std::optional<AuthorizedMessage>& current() const { return current_; }
  std::size_t unused_keys() const;
  const crypto::GroupParams& params() const { return params_; }

 private:
  std::size_t take_unused_key();

  crypto::GroupParams params_;
  std::vector<TemporaryKey> keys_;
  std::optional<AuthorizedMessage> current_;
  std::optional<std::size_t> current_key_;
  std::optional<std::size_t> next_key_;
};

}  // namespace poloc::protocol
