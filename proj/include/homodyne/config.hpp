#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "homodyne/estimation.hpp"

namespace homodyne {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepScale { Log, Linear };
enum class OutputFormat { Csv, Json };

/// Resolved run configuration: a flat JSON object of dotted keys with typed
/// accessors. Defaults are the Fig.-2 parameter family.
struct RunConfig {
  // detector
  double k_max = 1e16;
  double n_sat = 1e17;
  double sigma = 0.0;  // resolved: default_for(k_max) when not configured
  NoiseWidthMode sigma_mode = NoiseWidthMode::Constant;
  double tau_w = 1e-4;
  // optics
  double alpha_sq = 1e16;
  double beta_sq = 1e15;
  double chi = 0.01;
  double phi = 0.0;
  // estimation
  Protocol protocol = Protocol::Nonlinear;
  // sweep
  std::string sweep_variable = "alpha_sq";
  double sweep_min = 1e14;
  double sweep_max = 1e19;
  int sweep_points = 60;
  SweepScale sweep_scale = SweepScale::Log;
  // monte carlo
  std::int64_t mc_shots = 0;  // 0: no Monte Carlo column
  std::int64_t mc_blocks = 1;
  std::uint64_t mc_seed = 12345;
  bool mc_allow_gaussian_approx = false;
  // output
  std::string out_path;  // empty: stdout
  OutputFormat out_format = OutputFormat::Csv;

  /// Flat JSON object with every resolved key, embedded in all outputs.
  nlohmann::json resolved() const;

  DetectorModel make_detector() const;
  HomodyneSetup make_setup() const;
  HomodyneSetup make_setup(double alpha_sq_override) const;

  /// Sweep grid per the sweep spec.
  std::vector<double> sweep_values() const;

  /// Defaults, overlaid with the config file (flat JSON object, optional) and
  /// then with `key=value` overrides. Unknown keys are rejected.
  static RunConfig load(const std::string& config_path,
                        const std::vector<std::string>& overrides);
};

}  // namespace homodyne
