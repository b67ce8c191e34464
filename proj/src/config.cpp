#include "homodyne/config.hpp"

#include <cmath>
#include <fstream>

namespace homodyne {

namespace {

using nlohmann::json;

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
  return v.get<bool>();
}

void require_positive(double x, const char* key) {
  if (!(x > 0.0)) {
    throw ConfigError(std::string("config key '") + key + "' must be > 0");
  }
}

}  // namespace

json RunConfig::resolved() const {
  return json{
      {"k_max", k_max},
      {"n_sat", n_sat},
      {"sigma", sigma},
      {"sigma_mode", sigma_mode == NoiseWidthMode::Constant ? "constant" : "shot_scaled"},
      {"tau_w", tau_w},
      {"alpha_sq", alpha_sq},
      {"beta_sq", beta_sq},
      {"chi", chi},
      {"phi", phi},
      {"protocol", protocol == Protocol::Linear ? "linear" : "nonlinear"},
      {"sweep.variable", sweep_variable},
      {"sweep.min", sweep_min},
      {"sweep.max", sweep_max},
      {"sweep.points", sweep_points},
      {"sweep.scale", sweep_scale == SweepScale::Log ? "log" : "linear"},
      {"mc.shots", mc_shots},
      {"mc.blocks", mc_blocks},
      {"mc.seed", mc_seed},
      {"mc.allow_gaussian_approx", mc_allow_gaussian_approx},
      {"out.path", out_path},
      {"out.format", out_format == OutputFormat::Csv ? "csv" : "json"},
  };
}

DetectorModel RunConfig::make_detector() const {
  return DetectorModel(k_max, n_sat, NoiseWidthSpec{sigma_mode, sigma}, tau_w);
}

HomodyneSetup RunConfig::make_setup() const { return make_setup(alpha_sq); }

HomodyneSetup RunConfig::make_setup(double alpha_sq_override) const {
  const DetectorModel det = make_detector();
  return HomodyneSetup(CoherentField(std::sqrt(alpha_sq_override), chi),
                       CoherentField(std::sqrt(beta_sq), phi), det, det);
}

std::vector<double> RunConfig::sweep_values() const {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(sweep_points));
  if (sweep_scale == SweepScale::Log) {
    const double log_min = std::log10(sweep_min);
    const double log_max = std::log10(sweep_max);
    for (int i = 0; i < sweep_points; ++i) {
      const double t = static_cast<double>(i) / (sweep_points - 1);
      values.push_back(std::pow(10.0, log_min + t * (log_max - log_min)));
    }
  } else {
    for (int i = 0; i < sweep_points; ++i) {
      const double t = static_cast<double>(i) / (sweep_points - 1);
      values.push_back(sweep_min + t * (sweep_max - sweep_min));
    }
  }
  return values;
}

RunConfig RunConfig::load(const std::string& config_path,
                          const std::vector<std::string>& overrides) {
  json merged = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    try {
      merged = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
      throw ConfigError("config parse error in " + config_path + ": " + e.what());
    }
    if (!merged.is_object()) {
      throw ConfigError("config file must contain a flat JSON object");
    }
  }
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override must be key=value, got: " + kv);
    }
    const std::string key = kv.substr(0, eq);
    const std::string raw = kv.substr(eq + 1);
    json value = json::parse(raw, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) value = raw;  // bare strings need no quoting
    merged[key] = value;
  }

  RunConfig cfg;
  bool sigma_set = false;
  for (const auto& [key, value] : merged.items()) {
    if (key == "k_max") cfg.k_max = as_double(value, key);
    else if (key == "n_sat") cfg.n_sat = as_double(value, key);
    else if (key == "sigma") { cfg.sigma = as_double(value, key); sigma_set = true; }
    else if (key == "sigma_mode") {
      const std::string mode = as_string(value, key);
      if (mode == "constant") cfg.sigma_mode = NoiseWidthMode::Constant;
      else if (mode == "shot_scaled") cfg.sigma_mode = NoiseWidthMode::ShotScaled;
      else throw ConfigError("sigma_mode must be 'constant' or 'shot_scaled'");
    }
    else if (key == "tau_w") cfg.tau_w = as_double(value, key);
    else if (key == "alpha_sq") cfg.alpha_sq = as_double(value, key);
    else if (key == "beta_sq") cfg.beta_sq = as_double(value, key);
    else if (key == "chi") cfg.chi = as_double(value, key);
    else if (key == "phi") cfg.phi = as_double(value, key);
    else if (key == "protocol") {
      const std::string protocol = as_string(value, key);
      if (protocol == "linear") cfg.protocol = Protocol::Linear;
      else if (protocol == "nonlinear") cfg.protocol = Protocol::Nonlinear;
      else throw ConfigError("protocol must be 'linear' or 'nonlinear'");
    }
    else if (key == "sweep.variable") cfg.sweep_variable = as_string(value, key);
    else if (key == "sweep.min") cfg.sweep_min = as_double(value, key);
    else if (key == "sweep.max") cfg.sweep_max = as_double(value, key);
    else if (key == "sweep.points") cfg.sweep_points = static_cast<int>(as_int(value, key));
    else if (key == "sweep.scale") {
      const std::string scale = as_string(value, key);
      if (scale == "log") cfg.sweep_scale = SweepScale::Log;
      else if (scale == "linear") cfg.sweep_scale = SweepScale::Linear;
      else throw ConfigError("sweep.scale must be 'log' or 'linear'");
    }
    else if (key == "mc.shots") cfg.mc_shots = as_int(value, key);
    else if (key == "mc.blocks") cfg.mc_blocks = as_int(value, key);
    else if (key == "mc.seed") cfg.mc_seed = static_cast<std::uint64_t>(as_int(value, key));
    else if (key == "mc.allow_gaussian_approx") cfg.mc_allow_gaussian_approx = as_bool(value, key);
    else if (key == "out.path") cfg.out_path = as_string(value, key);
    else if (key == "out.format") {
      const std::string format = as_string(value, key);
      if (format == "csv") cfg.out_format = OutputFormat::Csv;
      else if (format == "json") cfg.out_format = OutputFormat::Json;
      else throw ConfigError("out.format must be 'csv' or 'json'");
    }
    else throw ConfigError("unknown config key: " + key);
  }

  require_positive(cfg.k_max, "k_max");
  require_positive(cfg.n_sat, "n_sat");
  require_positive(cfg.tau_w, "tau_w");
  require_positive(cfg.beta_sq, "beta_sq");
  if (!(cfg.alpha_sq >= 0.0)) throw ConfigError("config key 'alpha_sq' must be >= 0");
  if (!sigma_set) cfg.sigma = NoiseWidthSpec::default_for(cfg.k_max).value;
  if (!(cfg.sigma >= 0.0)) throw ConfigError("config key 'sigma' must be >= 0");
  if (!(cfg.sweep_min < cfg.sweep_max)) throw ConfigError("sweep.min must be < sweep.max");
  if (cfg.sweep_points < 2) throw ConfigError("sweep.points must be >= 2");
  if (cfg.sweep_scale == SweepScale::Log && !(cfg.sweep_min > 0.0)) {
    throw ConfigError("log sweep requires sweep.min > 0");
  }
  if (cfg.mc_shots < 0) throw ConfigError("mc.shots must be >= 0");
  if (cfg.mc_blocks < 1) throw ConfigError("mc.blocks must be >= 1");
  return cfg;
}

}  // namespace homodyne
