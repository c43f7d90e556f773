#include <gtest/gtest.h>

#include <random>
#include <set>

#include "chain.hpp"
#include "json.hpp"
#include "poloc/errors.hpp"
#include "poloc/protocol/transcript.hpp"

using namespace poloc;
using namespace poloc::protocol;
using poloc::testing::Chain;
using poloc::testing::ChainOptions;
using poloc::testing::finalized_hop;

namespace {

ChainOptions opts(std::size_t t, std::size_t hops, PowPolicy policy = PowPolicy::verify,
                  std::uint64_t seed = 1) {
  ChainOptions o;
  o.threshold_t = t;
  o.hops = hops;
  o.policy = policy;
  o.seed = seed;
  return o;
}

std::uint64_t missing_nonce(Chain& c, const CheckinMessage& msg, double traverse) {
  auto seed = encode_authorized(c.params(), msg.prior);
  auto target = pow::lookup_target(c.table(), traverse);
  std::uint64_t bad = 0;
  while (pow::verify_puzzle(seed, bad, target)) ++bad;
  return bad;
}

}  // namespace

TEST(Protocol, FourHopThresholdThree) {
  Chain c(opts(3, 4));
  ASSERT_EQ(c.run(), Status::accepted);
  const auto& h = c.history();
  ASSERT_EQ(h.size(), 4u);
  EXPECT_TRUE(h[1].finalized.empty());
  EXPECT_EQ(finalized_hop(h[2], 1), 3u);
  EXPECT_EQ(finalized_hop(h[2], 2), 0u);
  EXPECT_EQ(finalized_hop(h[3], 2), 4u);
  auto traj = extract_trajectory(h[3], "T");
  EXPECT_EQ(traj.length(), 4u);
  EXPECT_EQ(traj.proofs.size(), 2u);
  EXPECT_EQ(traj.proven_length(), 2u);
  EXPECT_TRUE(traj.is_pending(2));
  EXPECT_TRUE(verify_trajectory(c.params(), c.authority().keys().group_public_key, traj));
  // At hop 2 the issuing RSU carries its shares for m1 and m2.
  EXPECT_EQ(fresh_signature_items(h[1]), 2u);
}

TEST(Protocol, HonestRunsAcrossThresholdsAndLengths) {
  for (std::size_t t = 1; t <= 5; ++t) {
    for (std::size_t hops : {std::size_t{1}, t, std::size_t{9}, std::size_t{20}}) {
      auto policy = hops == 9 ? PowPolicy::verify : PowPolicy::external;
      Chain c(opts(t, hops, policy, 10 * t + hops));
      ASSERT_EQ(c.run(), Status::accepted) << "t=" << t << " hops=" << hops;
      auto traj = extract_trajectory(c.history().back());
      EXPECT_EQ(traj.length(), hops);
      EXPECT_EQ(traj.proofs.size(), hops >= t ? hops - t + 1 : 0);
      EXPECT_TRUE(verify_trajectory(c.params(), c.authority().keys().group_public_key, traj));
    }
  }
}

TEST(Protocol, FinalizationLag) {
  for (std::size_t t = 1; t <= 4; ++t) {
    const std::size_t hops = 8;
    Chain c(opts(t, hops, PowPolicy::external, t));
    ASSERT_EQ(c.run(), Status::accepted);
    const auto& last = c.history().back();
    for (std::size_t k = 1; k <= hops; ++k) {
      std::size_t due = k + t - 1;
      EXPECT_EQ(finalized_hop(last, k), due <= hops ? due : 0) << "t=" << t << " k=" << k;
    }
  }
}

TEST(Protocol, OwnershipTamperTerminatesSession) {
  Chain c(opts(3, 4));
  ASSERT_EQ(c.start(), Status::accepted);
  ASSERT_EQ(c.submit(2, c.prepare()), Status::accepted);
  auto msg = c.prepare();
  auto honest = msg;
  auto intruder = crypto::KeyPair::generate(c.params(), c.rng());
  msg.owner_signature =
      crypto::sign(intruder, owner_payload(c.params(), msg.prior, msg.pow_nonce, msg.next_pk), c.params());
  EXPECT_EQ(c.submit(3, msg), Status::ownership_failed);
  EXPECT_TRUE(c.rsus()[2].session_terminated(msg.prior.current_pk));
  EXPECT_EQ(c.submit(3, honest), Status::session_terminated);
  EXPECT_EQ(c.history().size(), 2u);
}

TEST(Protocol, PowTamperTerminatesSession) {
  Chain c(opts(3, 4));
  ASSERT_EQ(c.start(), Status::accepted);
  auto honest = c.prepare();
  auto bad = c.vehicle().prepare_checkin_with_nonce(missing_nonce(c, honest, 90));
  EXPECT_EQ(c.submit(2, bad), Status::pow_failed);
  EXPECT_EQ(c.submit(2, honest), Status::session_terminated);
}

TEST(Protocol, TamperedShareFailsOwnership) {
  Chain c(opts(2, 3, PowPolicy::external));
  ASSERT_EQ(c.start(), Status::accepted);
  ASSERT_EQ(c.submit(2, c.prepare()), Status::accepted);
  auto msg = c.prepare();
  msg.prior.pending.back().shares.back().share.value = crypto::generator_pow(c.params(), 12345);
  EXPECT_EQ(c.submit(3, msg), Status::ownership_failed);
}

TEST(Protocol, SharesMustComeFromANeighbour) {
  // RSU 3 is not adjacent to RSU 1 on the line.
  Chain c(opts(3, 3, PowPolicy::external));
  ASSERT_EQ(c.start(), Status::accepted);
  EXPECT_EQ(c.submit(3, c.prepare()), Status::ownership_failed);
}

TEST(Protocol, ClockSkewIsRejected) {
  Chain c(opts(3, 3));
  ASSERT_EQ(c.start(), Status::accepted);
  auto msg = c.prepare();
  auto res = c.rsus()[1].handle_checkin(msg, c.arrival(1));
  EXPECT_EQ(res.status, Status::clock_skew);
  EXPECT_FALSE(res.value.has_value());
}

TEST(Protocol, CertificateMustMatch) {
  Chain c(opts(3, 2));
  auto req = c.vehicle().begin_trajectory();
  req.pk = crypto::generator_pow(c.params(), 99);
  EXPECT_EQ(c.rsus()[0].handle_initial_request(req, 5).status, Status::invalid_certificate);
}

TEST(Protocol, TagRotationForcesNewTrajectories) {
  Chain c(opts(2, 3, PowPolicy::external));
  ASSERT_EQ(c.start(), Status::accepted);
  auto old_tag = c.rsus()[0].current_tag();
  std::vector<LocationTag> fresh;
  for (auto& r : c.rsus()) fresh.push_back(random_tag(r.id(), 1, c.rng()));
  for (std::size_t i = 0; i < c.rsus().size(); ++i) c.rsus()[i].rotate_tag(fresh[i]);
  for (auto& r : c.rsus())
    for (const auto& tag : fresh) r.learn_tag(tag);
  for (auto& r : c.rsus()) {
    EXPECT_FALSE(r.is_current_tag(old_tag.tag));
    EXPECT_TRUE(r.is_current_tag(fresh[0].tag));
  }
  EXPECT_EQ(c.submit(2, c.prepare()), Status::stale_tag);
}

TEST(Protocol, EpochBoundaries) {
  EXPECT_EQ(epoch_of(0, kDefaultEpochLength), 0u);
  EXPECT_EQ(epoch_of(3599, kDefaultEpochLength), 0u);
  EXPECT_EQ(epoch_of(3600, kDefaultEpochLength), 1u);
  EXPECT_EQ(epoch_of(1180, 1100), 1u);
  EXPECT_THROW(epoch_of(5, 0), InvalidArgument);
}

TEST(Protocol, KeysAreFreshPerHop) {
  Chain c(opts(3, 6, PowPolicy::external));
  ASSERT_EQ(c.run(), Status::accepted);
  std::set<crypto::BigInt> pks;
  for (const auto& m : c.history()) pks.insert(m.current_pk.exponent());
  EXPECT_EQ(pks.size(), c.history().size());
  // The wire header carries only the current key, counts and signature metadata.
  auto w = encode_wire(c.params(), c.history().back());
  auto pk = crypto::encode_element(c.params(), c.history().back().current_pk);
  EXPECT_TRUE(std::equal(pk.begin(), pk.end(), w.header.begin()));
}

TEST(Protocol, VehicleRunsOutOfKeys) {
  auto ta = TrustedAuthority(crypto::deal_group_keys(crypto::GroupParams::default_256(), 1, 2, 1));
  std::mt19937_64 rng(1);
  Vehicle v(ta.params(), ta.register_vehicle(1, rng));
  v.begin_trajectory();
  EXPECT_THROW(v.begin_trajectory(), InvalidArgument);
}

TEST(Protocol, TrajectoryVerificationCatchesEdits) {
  Chain c(opts(2, 5, PowPolicy::external));
  ASSERT_EQ(c.run(), Status::accepted);
  const auto& gpk = c.authority().keys().group_public_key;
  auto traj = extract_trajectory(c.history().back());
  ASSERT_TRUE(verify_trajectory(c.params(), gpk, traj));
  auto edited = traj;
  edited.entries[0].timestamp += 1;
  EXPECT_FALSE(verify_trajectory(c.params(), gpk, edited));
  edited = traj;
  edited.entries[2].timestamp = edited.entries[1].timestamp;
  EXPECT_FALSE(verify_trajectory(c.params(), gpk, edited));
  edited = traj;
  edited.proofs[0].signature.value = crypto::generator_pow(c.params(), 1);
  EXPECT_FALSE(verify_trajectory(c.params(), gpk, edited));
}

TEST(Messages, SizeFormula) {
  EXPECT_EQ(message_size(30, 4), 800u);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t t = 1 + rng() % 8;
    std::size_t l = t + rng() % (41 - t);
    Chain c(opts(t, l, PowPolicy::external, 500 + trial));
    ASSERT_EQ(c.run(), Status::accepted);
    auto w = encode_wire(c.params(), c.history().back());
    EXPECT_EQ(w.payload.size(), message_size(l, t)) << "l=" << l << " t=" << t;
    EXPECT_EQ(w.payload.size(), 24 * l + 20 * t);
  }
}

TEST(Messages, LocationMessageLayout) {
  auto gp = crypto::GroupParams::default_256();
  std::vector<TimestampedEntry> entries(2);
  entries[0].timestamp = 0x01020304;
  entries[0].tag.tag.fill(0xaa);
  entries[1].timestamp = 7;
  auto pk = crypto::generator_pow(gp, 5);
  auto m = encode_location_message(gp, pk, entries);
  ASSERT_EQ(m.size(), 32 + 2 * kEntryBytes);
  EXPECT_EQ(m[31], 5);
  EXPECT_EQ(m[32], 0x01);
  EXPECT_EQ(m[35], 0x04);
  EXPECT_EQ(m[36], 0xaa);
  EXPECT_EQ(m[32 + 24 + 3], 7);
}

TEST(Transcript, RecordsEveryStep) {
  Chain c(opts(3, 3, PowPolicy::external));
  Transcript tr(c.params());
  tr.note("start");
  auto req = c.vehicle().begin_trajectory();
  tr.initial_request(1, req);
  auto first = c.rsus()[0].handle_initial_request(req, c.arrival(1));
  ASSERT_TRUE(first);
  c.vehicle().accept(*first.value);
  tr.authorized(1, *first.value);
  auto msg = c.vehicle().prepare_checkin_with_nonce(0);
  tr.checkin(2, msg);
  tr.rejected(2, Status::pow_failed);
  EXPECT_EQ(tr.size(), 5u);
  auto j = nlohmann::json::parse(tr.to_json());
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 5u);
  EXPECT_NE(tr.to_text().find("PoW verification failed"), std::string::npos);
}
