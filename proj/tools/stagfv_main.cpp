#include <CLI11.hpp>

#include <iostream>

#include "stagfv/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"staggered finite-volume Euler solver and conservation audit"};
  app.require_subcommand(1);

  std::string config_path;
  int levels_override = 0;

  CLI::App* run = app.add_subcommand("run", "advance a configured case and write field CSVs");
  run->add_option("--config", config_path, "config file")->required();

  CLI::App* study = app.add_subcommand("study", "refinement study (error/consistency rates)");
  study->add_option("--config", config_path, "config file")->required();
  study->add_option("--levels", levels_override, "number of refinement levels");

  CLI::App* riemann = app.add_subcommand("riemann", "exact Riemann solution (star state + profile)");
  riemann->add_option("--config", config_path, "config file")->required();

  CLI::App* audit = app.add_subcommand("audit", "run with the full identity audit enabled");
  audit->add_option("--config", config_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    stagfv::RunConfig config = stagfv::parse_config_file(config_path);
    if (levels_override > 0) config.levels = levels_override;
    if (run->parsed()) return stagfv::cmd_run(config, std::cout);
    if (study->parsed()) return stagfv::cmd_study(config, std::cout);
    if (riemann->parsed()) return stagfv::cmd_riemann(config, std::cout);
    if (audit->parsed()) return stagfv::cmd_audit(config, std::cout);
  } catch (const stagfv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const stagfv::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
