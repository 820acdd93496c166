// Experiment runner: verify, residual, resonance, simulate, conserve.

#include "essmodes/commands.hpp"
#include "essmodes/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
  using namespace essmodes;

  CLI::App app{"Essential modes of the Maxwell operator and double-slit collapse sampling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::string events_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment config file")->required();
    sub->add_option("--seed", seed, "Override sampling.seed");
    sub->add_option("--out", out_dir, "Override output.directory");
  };

  auto* verify = app.add_subcommand("verify", "Normalisation, sifting, Fourier and curl checks");
  auto* residual = app.add_subcommand("residual", "Weyl residual convergence sweep (CSV)");
  auto* resonance = app.add_subcommand("resonance", "Essential-resonance search (JSON)");
  auto* simulate = app.add_subcommand("simulate", "Sample detection events from the Born density");
  auto* conserve = app.add_subcommand("conserve", "Conservation check for an events file");
  for (auto* sub : {verify, residual, resonance, simulate, conserve}) add_common(sub);
  conserve->add_option("--events", events_path, "Events CSV written by simulate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto cfg = load_config(config_path);
    if (seed) cfg.sampling.seed = *seed;
    if (out_dir) cfg.output_dir = *out_dir;

    if (verify->parsed()) return cmd_verify(cfg, std::cout);
    if (residual->parsed()) return cmd_residual(cfg, std::cout);
    if (resonance->parsed()) return cmd_resonance(cfg, std::cout);
    if (simulate->parsed()) return cmd_simulate(cfg, std::cout);
    if (conserve->parsed()) return cmd_conserve(cfg, events_path, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
