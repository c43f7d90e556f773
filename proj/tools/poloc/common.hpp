#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace poloc::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

// Thrown for bad flag combinations that CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "a:b:s" (inclusive) or a comma list.
std::vector<double> parse_grid(const std::string& spec);

std::string read_text_file(const std::filesystem::path& path);
// Writes atomically, creating parent directories.
void write_output(const std::filesystem::path& path, const std::string& content);

// The command line as typed, recorded in run manifests.
const std::string& command_line();
void set_command_line(int argc, char** argv);

void add_keygen(CLI::App& app);
void add_target_table(CLI::App& app);
void add_demo_run(CLI::App& app);
void add_simulate(CLI::App& app);
void add_sweep(CLI::App& app);
void add_detect(CLI::App& app);
void add_report(CLI::App& app);

// Set by the selected subcommand's callback.
int& exit_status();

}  // namespace poloc::cli
