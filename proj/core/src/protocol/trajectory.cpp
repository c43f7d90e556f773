#include "poloc/protocol/trajectory.hpp"

#include <algorithm>

namespace poloc::protocol {

std::size_t Trajectory::proven_length() const {
  std::size_t n = 0;
  for (const auto& p : proofs) n = std::max(n, p.entry_count);
  return n;
}

Trajectory extract_trajectory(const AuthorizedMessage& msg, std::string id) {
  Trajectory t;
  t.id = std::move(id);
  t.entries = msg.entries;
  t.proofs = msg.finalized;
  std::sort(t.proofs.begin(), t.proofs.end(),
            [](const LocationProof& a, const LocationProof& b) { return a.entry_count < b.entry_count; });
  return t;
}

bool verify_trajectory(const crypto::GroupParams& gp, const crypto::GroupElement& group_pk,
                       const Trajectory& trajectory) {
  for (std::size_t i = 1; i < trajectory.entries.size(); ++i)
    if (trajectory.entries[i].timestamp <= trajectory.entries[i - 1].timestamp) return false;
  for (const auto& p : trajectory.proofs) {
    if (p.entry_count == 0 || p.entry_count > trajectory.entries.size()) return false;
    Bytes m = encode_location_message(gp, p.pk, std::span(trajectory.entries).first(p.entry_count));
    if (!crypto::verify_signature(group_pk, m, p.signature, gp)) return false;
  }
  return true;
}

}  // namespace poloc::protocol
