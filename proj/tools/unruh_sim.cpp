// unruh_sim <command> --config <path> [--out <dir>] [--preset <name>] [--workers <n>]

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "unruh/commands.hpp"
#include "unruh/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Unruh-signature pair emission vs Larmor radiation in strong periodic fields"};
  app.set_version_flag("--version", unruh::kToolVersion);

  std::string command, config_path, out_dir, preset;
  std::size_t workers = 0;
  app.add_option("command", command, "validate | trajectory | larmor-spectrum | pair-spectrum | map | estimate | stats")
      ->required()
      ->check(CLI::IsMember(unruh::command_names()));
  app.add_option("--config", config_path, "scenario config file")->required();
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--preset", preset, "start from a built-in preset")
      ->check(CLI::IsMember(unruh::preset_names()));
  app.add_option("--workers", workers, "worker threads (overrides run.workers)")
      ->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) std::cerr << app.help();
    const int rc = app.exit(e);
    return rc == 0 ? 0 : unruh::kExitInvalid;
  }

  unruh::ScenarioConfig cfg;
  try {
    cfg = unruh::parse_config(config_path, preset);
  } catch (const unruh::ParseError& e) {
    std::cerr << config_path;
    if (e.line() > 0) std::cerr << ':' << e.line();
    std::cerr << ": " << e.what() << '\n';
    return unruh::kExitInvalid;
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (workers > 0) cfg.workers = workers;

  std::cout << "# effective configuration\n" << unruh::echo_config(cfg);
  return unruh::run_command(command, cfg, std::cout, std::cerr);
}
