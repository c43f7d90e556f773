#include <iostream>
#include <memory>

#include "common.hpp"
#include "json.hpp"
#include "poloc/crypto/keys.hpp"
#include "poloc/io/trajectory_json.hpp"
#include "poloc/protocol/trajectory.hpp"

namespace poloc::cli {

namespace {

struct DetectOptions {
  std::string trajectories;
  double window = 17;
  std::size_t limit = 15;
  double tau = 0;
  std::string keys;
  std::string out;
  std::string dimacs;
  bool similarities = false;
};

// Structural checks always; proof checks when a key file is supplied.
std::string unverifiable_reason(const protocol::Trajectory& t, const crypto::GroupKeyMaterial* km) {
  if (t.entries.empty()) return "no entries";
  for (std::size_t i = 1; i < t.entries.size(); ++i)
    if (t.entries[i].timestamp <= t.entries[i - 1].timestamp) return "timestamps not strictly increasing";
  if (km && !protocol::verify_trajectory(km->params, km->group_public_key, t))
    return "proof of location does not verify";
  return {};
}

void run_detect(const DetectOptions& o) {
  std::optional<crypto::GroupKeyMaterial> km;
  if (!o.keys.empty()) km = crypto::read_key_file(o.keys);
  const auto gp = km ? km->params : crypto::GroupParams::default_256();
  auto set = io::parse_trajectories(read_text_file(o.trajectories), gp);

  detection::DetectionParams params{o.window, o.limit, o.tau};
  params.validate();

  std::vector<protocol::Trajectory> accepted;
  nlohmann::json excluded = nlohmann::json::array();
  bool unproven = false;
  for (auto& t : set.trajectories) {
    auto reason = unverifiable_reason(t, km ? &*km : nullptr);
    if (!reason.empty()) {
      std::cerr << "warning: excluding trajectory " << t.id << ": " << reason << "\n";
      excluded.push_back({{"id", t.id}, {"reason", reason}});
      continue;
    }
    if (!km && !t.proofs.empty()) unproven = true;
    accepted.push_back(std::move(t));
  }
  if (unproven) std::cerr << "warning: no --keys given, proofs of location were not checked\n";

  const auto run = detection::run_detection(accepted, params);
  auto report = nlohmann::json::parse(detection::verdict_json(run, o.similarities));
  report["excluded"] = excluded;
  report["check_window"] = o.window;
  report["length_limit"] = o.limit;
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_output(o.out, text);
  }
  if (!o.dimacs.empty()) write_output(o.dimacs, detection::to_dimacs(run.graph));
}

}  // namespace

void add_detect(CLI::App& app) {
  auto o = std::make_shared<DetectOptions>();
  auto* cmd = app.add_subcommand("detect", "Run Sybil trajectory detection on a trajectory file");
  cmd->add_option("--trajectories", o->trajectories, "Trajectory JSON file")->required();
  cmd->add_option("-w,--window", o->window, "Check window in seconds")->capture_default_str();
  cmd->add_option("-L,--limit", o->limit, "Trajectory length limit")->capture_default_str();
  cmd->add_option("--tau", o->tau, "Similarity threshold for edges")->capture_default_str();
  cmd->add_option("--keys", o->keys, "Key file; when given, proofs of location are verified");
  cmd->add_option("-o,--out", o->out, "Verdict JSON (stdout if omitted)");
  cmd->add_option("--dimacs", o->dimacs, "Write the similarity graph in DIMACS format");
  cmd->add_flag("--similarities", o->similarities, "Include per-edge similarities in the verdict");
  cmd->callback([o] { run_detect(*o); });
}

}  // namespace poloc::cli
