#include <iostream>
#include <memory>

#include "common.hpp"
#include "poloc/crypto/keys.hpp"
#include "poloc/errors.hpp"

namespace poloc::cli {

namespace {
struct KeygenOptions {
  std::size_t threshold = 3;
  std::size_t rsus = 10;
  std::string out;
  std::uint64_t seed = 1;
};
}  // namespace

void add_keygen(CLI::App& app) {
  auto opts = std::make_shared<KeygenOptions>();
  auto* cmd = app.add_subcommand("keygen", "Deal a (t, n) RSU group key and write the key file");
  cmd->add_option("-t,--threshold", opts->threshold, "Threshold t")->capture_default_str();
  cmd->add_option("-n,--rsus", opts->rsus, "Number of RSUs n in the group")->capture_default_str();
  cmd->add_option("-o,--out", opts->out, "Key file to write")->required();
  cmd->add_option("--seed", opts->seed, "Dealer seed")->capture_default_str();
  cmd->callback([opts] {
    if (opts->threshold < 1 || opts->threshold > opts->rsus)
      throw UsageError("threshold must satisfy 1 <= t <= n (got t=" + std::to_string(opts->threshold) +
                       ", n=" + std::to_string(opts->rsus) + ")");
    auto km = crypto::deal_group_keys(crypto::GroupParams::default_256(), opts->threshold, opts->rsus,
                                      opts->seed);
    crypto::write_key_file(opts->out, km);
    std::cout << "wrote " << opts->out << ": t=" << km.threshold_t << " n=" << km.total_n
              << " group key " << to_hex(crypto::encode_element(km.params, km.group_public_key)) << "\n";
  });
}

}  // namespace poloc::cli
