#include <iostream>
#include <memory>

#include "common.hpp"
#include "poloc/pow/target_table.hpp"

namespace poloc::cli {

namespace {
struct TableOptions {
  std::string rates = "0.95,0.90,0.85,0.80";
  std::string times = "10:130:10";
  double hash_rate = 3.5e6 / 90.0;
  unsigned bits = pow::kFullOutputBits;
  std::string mode = "analytic";
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out;
};
}  // namespace

void add_target_table(CLI::App& app) {
  auto opts = std::make_shared<TableOptions>();
  auto* cmd = app.add_subcommand("target-table", "Build the traverse-time to PoW target lookup table");
  cmd->add_option("--rates", opts->rates, "Success rates, comma separated")->capture_default_str();
  cmd->add_option("--times", opts->times, "Traverse times: start:stop:step or a comma list")
      ->capture_default_str();
  cmd->add_option("--hash-rate", opts->hash_rate, "Hashes per second")->capture_default_str();
  cmd->add_option("--bits", opts->bits, "Puzzle output bits (N = 2^bits)")->capture_default_str();
  cmd->add_option("--mode", opts->mode, "analytic or mc")
      ->check(CLI::IsMember({"analytic", "mc"}))
      ->capture_default_str();
  cmd->add_option("--trials", opts->trials, "Monte-Carlo trials per cell")->capture_default_str();
  cmd->add_option("--seed", opts->seed, "Monte-Carlo seed")->capture_default_str();
  cmd->add_option("-o,--out", opts->out, "CSV to write (stdout if omitted)");
  cmd->callback([opts] {
    const auto rates = parse_grid(opts->rates);
    const auto times = parse_grid(opts->times);
    pow::TableBuildOptions build;
    build.mode = opts->mode == "mc" ? pow::TableMode::monte_carlo : pow::TableMode::analytic;
    build.trials = opts->trials;
    build.seed = opts->seed;
    const auto table = pow::build_target_table(rates, times, opts->hash_rate, opts->bits, build);
    const auto csv = pow::target_table_csv(table);
    if (opts->out.empty()) {
      std::cout << csv;
    } else {
      write_output(opts->out, csv);
      std::cout << "wrote " << opts->out << " (" << table.rows.size() << " rows)\n";
    }
  });
}

}  // namespace poloc::cli
