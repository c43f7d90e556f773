#include "poloc/protocol/vehicle.hpp"

#include <algorithm>

#include "poloc/errors.hpp"

namespace poloc::protocol {

Vehicle::Vehicle(crypto::GroupParams params, std::vector<TemporaryKey> keys)
    : params_(std::move(params)), keys_(std::move(keys)) {}

std::size_t Vehicle::unused_keys() const {
  return static_cast<std::size_t>(
      std::count_if(keys_.begin(), keys_.end(), [](const TemporaryKey& k) { return !k.used; }));
}

std::size_t Vehicle::take_unused_key() {
  auto it = std::find_if(keys_.begin(), keys_.end(), [](const TemporaryKey& k) { return !k.used; });
  if (it == keys_.end()) throw InvalidArgument("vehicle has no unused temporary keys");
  it->used = true;
  return static_cast<std::size_t>(it - keys_.begin());
}

InitialRequest Vehicle::begin_trajectory() {
  std::size_t idx = take_unused_key();
  current_.reset();
  current_key_ = idx;
  next_key_.reset();
  return {keys_[idx].key.public_key, keys_[idx].certificate};
}

void Vehicle::accept(AuthorizedMessage msg) {
  if (next_key_ && keys_[*next_key_].key.public_key == msg.current_pk) {
    current_key_ = next_key_;
    next_key_.reset();
  } else if (!current_key_ || keys_[*current_key_].key.public_key != msg.current_pk) {
    throw InvalidArgument("authorized message is not bound to one of this vehicle's keys");
  }
  current_ = std::move(msg);
}

CheckinMessage Vehicle::prepare_checkin_with_nonce(std::uint64_t nonce) {
  if (!current_ || !current_key_) throw InvalidArgument("vehicle holds no authorized message");
  if (!next_key_) next_key_ = take_unused_key();

  CheckinMessage out;
  out.prior = *current_;
  out.pow_nonce = nonce;
  out.next_pk = keys_[*next_key_].key.public_key;
  out.owner_signature = crypto::sign(keys_[*current_key_].key,
                                     owner_payload(params_, out.prior, nonce, out.next_pk), params_);
  return out;
}

CheckinMessage Vehicle::prepare_checkin(std::uint64_t hash_budget, unsigned output_bits) {
  if (!current_) throw InvalidArgument("vehicle holds no authorized message");
  Bytes seed = encode_authorized(params_, *current_);
  auto best = pow::find_best_nonce(seed, hash_budget, output_bits);
  return prepare_checkin_with_nonce(best.nonce);
}

}  // namespace poloc::protocol
