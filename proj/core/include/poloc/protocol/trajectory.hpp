#pragma once

#include <string>
#include <vector>

#include "poloc/protocol/messages.hpp"

namespace poloc::protocol {

// A vehicle's anonymous identity: the chained entries plus every proof of
// location finalized so far. Entries past the last proof are still pending.
struct Trajectory {
  std::string id;
  std::vector<TimestampedEntry> entries;
  std::vector<LocationProof> proofs;

  std::size_t length() const { return entries.size(); }
  std::size_t proven_length() const;
  bool is_pending(std::size_t entry_index) const { return entry_index >= proven_length(); }
};

Trajectory extract_trajectory(const AuthorizedMessage& msg, std::string id = {});

// Every proof verifies under the group key and timestamps strictly increase.
bool verify_trajectory(const crypto::GroupParams& gp, const crypto::GroupElement& group_pk,
                       const Trajectory& trajectory);

}  // namespace poloc::protocol
