#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homodyne/commands.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 oversaturation, 4 I/O failure,
// 1 anything else.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kOversaturated = 3,
  kIoError = 4,
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Optical phase estimation via homodyne measurement with saturating "
      "photodetectors"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_given = false;

  app.add_option("--config", config_path, "Flat JSON config file");
  app.add_option("--set", overrides, "Override a config key (key=value, repeatable)");
  app.add_option("--out", out_path, "Output path (default: stdout)");
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Monte Carlo seed (overrides mc.seed)")
      ->each([&](const std::string&) { seed_given = true; });

  app.add_subcommand("table1", "Linear vs saturating detector response table")
      ->fallthrough();
  app.add_subcommand("fig2", "Error-ratio sweep over signal photon number")
      ->fallthrough();
  app.add_subcommand("precision",
                     "Analytic (and optional empirical) phase precision sweep")
      ->fallthrough();
  app.add_subcommand("simulate", "Shot-by-shot Monte Carlo ensemble, JSON output")
      ->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    homodyne::RunConfig cfg = homodyne::RunConfig::load(config_path, overrides);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) {
      cfg.out_format = format == "json" ? homodyne::OutputFormat::Json
                                        : homodyne::OutputFormat::Csv;
    }
    if (seed_given) cfg.mc_seed = seed;

    homodyne::commands::run(app.get_subcommands().front()->get_name(), cfg);
    return kOk;
  } catch (const homodyne::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const homodyne::OversaturatedError& e) {
    std::cerr << "oversaturated: " << e.what() << "\n";
    return kOversaturated;
  } catch (const homodyne::commands::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
