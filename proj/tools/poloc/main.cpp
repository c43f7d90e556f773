#include <iostream>

#include "common.hpp"
#include "poloc/errors.hpp"

using namespace poloc;

int main(int argc, char** argv) {
  cli::set_command_line(argc, argv);
  CLI::App app{"poloc: PoW-gated proofs of location and Sybil trajectory detection", "poloc"};
  app.set_version_flag("--version", POLOC_VERSION);
  app.require_subcommand(1, 1);
  cli::add_keygen(app);
  cli::add_target_table(app);
  cli::add_demo_run(app);
  cli::add_simulate(app);
  cli::add_sweep(app);
  cli::add_detect(app);
  cli::add_report(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  }
  return cli::exit_status();
}
