#include <cmath>
#include <iostream>
#include <memory>
#include <optional>

#include "common.hpp"
#include "poloc/crypto/keys.hpp"
#include "poloc/protocol/authority.hpp"
#include "poloc/protocol/trajectory.hpp"
#include "poloc/protocol/transcript.hpp"

namespace poloc::cli {

namespace {

struct DemoOptions {
  std::string keys;
  std::size_t hops = 4;
  std::optional<std::size_t> threshold;
  double traverse = 90;
  std::string tamper = "none";
  std::size_t tamper_hop = 0;  // 0 = last hop
  unsigned bits = 32;
  double hash_rate = 100;
  double rate = 0.999999;
  std::uint32_t epoch_length = protocol::kDefaultEpochLength;
  std::uint64_t seed = 1;
  std::string transcript;
  bool quiet = false;
};

int run_demo(const DemoOptions& o) {
  if (o.hops < 1) throw UsageError("--hops must be at least 1");
  if (!(o.traverse >= 1)) throw UsageError("--traverse must be at least one second");
  if (o.epoch_length == 0) throw UsageError("--epoch-length must be positive");

  crypto::GroupKeyMaterial km;
  if (!o.keys.empty()) {
    km = crypto::read_key_file(o.keys);
    if (o.threshold && *o.threshold != km.threshold_t)
      throw UsageError("--threshold " + std::to_string(*o.threshold) + " does not match the key file (t=" +
                       std::to_string(km.threshold_t) + ")");
  } else {
    const std::size_t t = o.threshold.value_or(3);
    if (t < 1) throw UsageError("--threshold must be at least 1");
    km = crypto::deal_group_keys(crypto::GroupParams::default_256(), t, std::max(o.hops, t), o.seed);
  }
  if (km.total_n < o.hops)
    throw UsageError("key group has " + std::to_string(km.total_n) + " RSUs, fewer than --hops");
  const std::size_t t = km.threshold_t;
  const std::size_t tamper_hop = o.tamper_hop == 0 ? o.hops : o.tamper_hop;
  if (o.tamper != "none" && (tamper_hop < 2 || tamper_hop > o.hops))
    throw UsageError("--tamper-hop must name a check-in hop in [2, hops]");

  protocol::TrustedAuthority ta(km);
  pow::TableBuildOptions build;
  build.operating_rate = o.rate;
  const auto table = pow::build_target_table({o.rate}, {o.traverse}, o.hash_rate, o.bits, build);

  std::mt19937_64 rng(o.seed);
  std::vector<protocol::LocationTag> tags;
  std::vector<protocol::Rsu> rsus;
  for (protocol::RsuId id = 1; id <= o.hops; ++id) tags.push_back(protocol::random_tag(id, 0, rng));
  for (protocol::RsuId id = 1; id <= o.hops; ++id) {
    std::set<protocol::RsuId> nb;
    if (id > 1) nb.insert(id - 1);
    if (id < o.hops) nb.insert(id + 1);
    rsus.emplace_back(ta.rsu_config(id, nb, table), tags[id - 1]);
  }
  for (auto& r : rsus)
    for (const auto& tag : tags) r.learn_tag(tag);

  protocol::Vehicle vehicle(ta.params(), ta.register_vehicle(o.hops + 1, rng));
  protocol::Transcript transcript(ta.params());
  transcript.note("demo: " + std::to_string(o.hops) + " hops, t=" + std::to_string(t) +
                  ", traverse " + std::to_string(static_cast<long>(o.traverse)) + " s, N=2^" +
                  std::to_string(o.bits));

  auto finish = [&](int code) {
    if (!o.quiet) std::cout << transcript.to_text();
    if (!o.transcript.empty()) write_output(o.transcript, transcript.to_json());
    return code;
  };

  const std::uint32_t t0 = 1000;
  auto arrival = [&](std::size_t hop) {
    return t0 + static_cast<std::uint32_t>(std::llround(o.traverse * static_cast<double>(hop - 1)));
  };

  // All RSUs switch to fresh tags when an arrival falls in a later epoch.
  std::uint32_t epoch = protocol::epoch_of(arrival(1), o.epoch_length);
  auto advance_epoch = [&](std::size_t hop) {
    const std::uint32_t e = protocol::epoch_of(arrival(hop), o.epoch_length);
    if (e == epoch) return;
    epoch = e;
    for (protocol::RsuId id = 1; id <= o.hops; ++id) tags[id - 1] = protocol::random_tag(id, e, rng);
    for (auto& r : rsus) {
      r.rotate_tag(tags[r.id() - 1]);
      for (const auto& tag : tags) r.learn_tag(tag);
    }
    transcript.note("epoch " + std::to_string(e) + ": location tags rotated");
  };

  auto req = vehicle.begin_trajectory();
  transcript.initial_request(1, req);
  auto first = rsus[0].handle_initial_request(req, arrival(1));
  if (!first) {
    transcript.rejected(1, first.status);
    std::cerr << describe(first.status) << "\n";
    return finish(kVerificationFailed);
  }
  vehicle.accept(*first.value);
  transcript.authorized(1, *vehicle.current());

  const auto budget = static_cast<std::uint64_t>(std::llround(o.hash_rate * o.traverse));
  for (std::size_t hop = 2; hop <= o.hops; ++hop) {
    auto msg = vehicle.prepare_checkin(budget, o.bits);
    if (hop == tamper_hop && o.tamper == "ownership") {
      auto intruder = crypto::KeyPair::generate(ta.params(), rng);
      msg.owner_signature = crypto::sign(
          intruder, protocol::owner_payload(ta.params(), msg.prior, msg.pow_nonce, msg.next_pk), ta.params());
      transcript.note("tamper: owner signature replaced by a key the vehicle does not own");
    } else if (hop == tamper_hop && o.tamper == "pow") {
      const auto seed = protocol::encode_authorized(ta.params(), msg.prior);
      const auto target = pow::lookup_target(table, o.traverse);
      std::uint64_t bad = 0;
      while (pow::verify_puzzle(seed, bad, target)) ++bad;
      msg = vehicle.prepare_checkin_with_nonce(bad);
      transcript.note("tamper: nonce replaced by one that misses the target");
    }
    advance_epoch(hop);
    transcript.checkin(static_cast<protocol::RsuId>(hop), msg);
    auto res = rsus[hop - 1].handle_checkin(msg, arrival(hop));
    if (!res) {
      transcript.rejected(static_cast<protocol::RsuId>(hop), res.status);
      std::cerr << "hop " << hop << ": " << describe(res.status) << "\n";
      return finish(kVerificationFailed);
    }
    vehicle.accept(*res.value);
    transcript.authorized(static_cast<protocol::RsuId>(hop), *vehicle.current());
  }

  // Entry k must be finalized exactly at hop k + t - 1.
  const auto& final_msg = *vehicle.current();
  bool ok = true;
  for (std::size_t k = 1; k <= o.hops; ++k) {
    const std::size_t due = k + t - 1;
    const protocol::LocationProof* proof = nullptr;
    for (const auto& p : final_msg.finalized)
      if (p.entry_count == k) proof = &p;
    if (due <= o.hops) {
      if (!proof || proof->finalized_at_hop != due) {
        transcript.note("FAIL: m" + std::to_string(k) + " not finalized at hop " + std::to_string(due));
        ok = false;
      } else {
        transcript.note("m" + std::to_string(k) + " finalized at hop " + std::to_string(due));
      }
    } else if (proof) {
      transcript.note("FAIL: m" + std::to_string(k) + " finalized early");
      ok = false;
    }
  }
  auto trajectory = protocol::extract_trajectory(final_msg, "demo");
  if (!protocol::verify_trajectory(ta.params(), km.group_public_key, trajectory)) {
    transcript.note("FAIL: trajectory does not verify under the group key");
    ok = false;
  } else {
    transcript.note("trajectory verifies: l=" + std::to_string(trajectory.length()) + ", " +
                    std::to_string(trajectory.proofs.size()) + " proofs of location");
  }
  return finish(ok ? kOk : kVerificationFailed);
}

}  // namespace

void add_demo_run(CLI::App& app) {
  auto o = std::make_shared<DemoOptions>();
  auto* cmd = app.add_subcommand("demo-run", "Run one vehicle through a chain of RSUs and print the transcript");
  cmd->add_option("--keys", o->keys, "Key file from keygen (dealt in memory if omitted)");
  cmd->add_option("--hops", o->hops, "Number of RSUs visited")->capture_default_str();
  cmd->add_option("-t,--threshold", o->threshold, "Threshold t when no key file is given (default 3)");
  cmd->add_option("--traverse", o->traverse, "Seconds between consecutive RSUs")->capture_default_str();
  cmd->add_option("--tamper", o->tamper, "none, ownership or pow")
      ->check(CLI::IsMember({"none", "ownership", "pow"}))
      ->capture_default_str();
  cmd->add_option("--tamper-hop", o->tamper_hop, "Check-in hop to tamper with (default: last)");
  cmd->add_option("--bits", o->bits, "Puzzle output bits")->capture_default_str();
  cmd->add_option("--hash-rate", o->hash_rate, "Vehicle hashes per second")->capture_default_str();
  cmd->add_option("--rate", o->rate, "Success rate the RSUs' target table is built for")->capture_default_str();
  cmd->add_option("--seed", o->seed, "Seed for keys, tags and the vehicle")->capture_default_str();
  cmd->add_option("--epoch-length", o->epoch_length, "Seconds per location-tag epoch")->capture_default_str();
  cmd->add_option("--transcript", o->transcript, "Write the annotated JSON transcript here");
  cmd->add_flag("-q,--quiet", o->quiet, "Do not print the transcript");
  cmd->callback([o] { exit_status() = run_demo(*o); });
}

}  // namespace poloc::cli
