// Command-line front end: config in, CSV tables out.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "sbldoa/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sparse-array DOA estimation runner"};

  std::string config_path;
  std::string mode;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;

  app.add_option("--config", config_path, "Path to a key = value config file");
  app.add_option("--mode", mode, "single or sweep (default: sweep when the config defines one)")
      ->check(CLI::IsMember({"single", "sweep"}));
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--seed", seed, "Base seed (overrides scenario.seed)")
      ->each([&](const std::string&) { seed_given = true; });

  CLI11_PARSE(app, argc, argv);

  sbldoa::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = sbldoa::load_config(config_path);
  } catch (const sbldoa::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return sbldoa::kExitConfig;
  }

  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (seed_given) cfg.seed = seed;
  if (mode.empty()) mode = cfg.has_sweep ? "sweep" : "single";

  return sbldoa::run_command(mode, cfg);
}
