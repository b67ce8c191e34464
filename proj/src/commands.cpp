#include "homodyne/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>

namespace homodyne::commands {

namespace {

using nlohmann::json;

constexpr double kTable1Ratios[] = {0.01, 0.1, 1.0, 2.0, 3.0};
constexpr double kMaxEmpiricalPhotons = 1e8;

void write_config_comments(std::ostream& out, const RunConfig& cfg) {
  const json resolved = cfg.resolved();
  for (const auto& [key, value] : resolved.items()) {
    out << "# " << key << " = " << value.dump() << "\n";
  }
}

double empirical_spread(const RunConfig& cfg, const HomodyneSetup& setup,
                        std::int64_t shots_per_ensemble) {
  if (cfg.mc_blocks < 2) {
    throw ConfigError("empirical precision needs mc.blocks >= 2 independent ensembles");
  }
  std::vector<double> estimates;
  estimates.reserve(static_cast<std::size_t>(cfg.mc_blocks));
  for (std::int64_t e = 0; e < cfg.mc_blocks; ++e) {
    const EnsembleStats stats =
        run_ensemble(setup, shots_per_ensemble, cfg.protocol,
                     cfg.mc_seed + static_cast<std::uint64_t>(e));
    estimates.push_back(stats.estimator_mean);
  }
  double mean = 0.0;
  for (double v : estimates) mean += v;
  mean /= static_cast<double>(estimates.size());
  double ss = 0.0;
  for (double v : estimates) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(estimates.size() - 1));
}

void refuse_large_scale_mc(double alpha_sq) {
  if (alpha_sq > kMaxEmpiricalPhotons) {
    throw ConfigError(
        "empirical precision column refused: alpha_sq > 1e8 makes shot-by-shot "
        "Monte Carlo infeasible; restrict the sweep or set mc.shots = 0");
  }
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[48];
  const double mag = std::abs(value);
  if (mag < 1e-3 || mag >= 1e6) {
    std::snprintf(buf, sizeof(buf), "%.12e", value);
  } else {
    std::snprintf(buf, sizeof(buf), "%.12g", value);
  }
  return buf;
}

std::vector<Table1Row> table1_rows(const RunConfig& cfg) {
  const DetectorModel det = cfg.make_detector();
  std::vector<Table1Row> rows;
  for (double ratio : kTable1Ratios) {
    const double n = ratio * det.n_sat();
    rows.push_back(Table1Row{ratio, ratio, linear_current(det, n),
                             mean_current(det, n) / det.i_max(),
                             mean_current(det, n)});
  }
  return rows;
}

std::vector<Fig2Row> fig2_rows(const RunConfig& cfg) {
  if (cfg.chi == 0.0) throw ConfigError("fig2 requires chi != 0");
  std::vector<Fig2Row> rows;
  for (double n : cfg.sweep_values()) {
    const HomodyneSetup setup = cfg.make_setup(n);
    Fig2Row row{n, error_ratio(setup, Protocol::Linear), std::nullopt, false};
    try {
      row.eta_nonlinear = error_ratio(setup, Protocol::Nonlinear);
    } catch (const OversaturatedError&) {
      row.oversaturated = true;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<PrecisionRow> precision_rows(const RunConfig& cfg) {
  const bool sweep_shots =
      cfg.sweep_variable == "shots" || cfg.sweep_variable == "M";
  if (!sweep_shots && cfg.sweep_variable != "alpha_sq") {
    throw ConfigError("precision sweeps support sweep.variable 'alpha_sq' or 'shots'");
  }
  const bool empirical = cfg.mc_shots > 0;

  std::vector<PrecisionRow> rows;
  for (double x : cfg.sweep_values()) {
    HomodyneSetup setup = sweep_shots ? cfg.make_setup() : cfg.make_setup(x);
    std::int64_t shots;
    if (sweep_shots) {
      shots = static_cast<std::int64_t>(std::llround(x));
      if (shots < 1) shots = 1;
      x = static_cast<double>(shots);
    } else {
      shots = cfg.mc_shots > 0 ? cfg.mc_shots : 1;
    }
    PrecisionRow row{x, analytic_precision(setup, cfg.sigma, shots), std::nullopt};
    if (empirical && shots >= 2) {
      refuse_large_scale_mc(sweep_shots ? cfg.alpha_sq : row.x);
      row.dchi_empirical = empirical_spread(cfg, setup, shots);
    }
    rows.push_back(row);
  }
  return rows;
}

SimulateResult simulate(const RunConfig& cfg) {
  if (cfg.mc_shots < 2) {
    throw ConfigError("simulate requires mc.shots >= 2 (variance undefined for one shot)");
  }
  if (cfg.mc_shots % cfg.mc_blocks != 0) {
    throw ConfigError("mc.blocks must divide mc.shots");
  }
  const HomodyneSetup setup = cfg.make_setup();
  const MixedPair mixed = mix_on_beam_splitter(setup.signal, setup.lo);
  const double n_peak = std::max(mixed.photons1(), mixed.photons2());
  if (n_peak >= 1e6 && !cfg.mc_allow_gaussian_approx) {
    throw ConfigError(
        "mean photon number >= 1e6 leaves the exact-sampling regime; set "
        "mc.allow_gaussian_approx = true to accept Gaussian-approximate photon "
        "statistics");
  }

  SimulateResult result{};
  result.stats = run_ensemble(setup, cfg.mc_shots, cfg.protocol, cfg.mc_seed,
                              cfg.mc_shots / cfg.mc_blocks);
  result.predicted_current1 = mean_current(setup.det1, mixed.photons1());
  result.predicted_current2 = mean_current(setup.det2, mixed.photons2());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (cfg.sigma_mode == NoiseWidthMode::Constant) {
    result.predicted_electron_variance1 =
        exact_electron_moments(setup.det1, mixed.photons1()).variance;
    result.predicted_electron_variance2 =
        exact_electron_moments(setup.det2, mixed.photons2()).variance;
    result.electron_variance_sigma_only = cfg.sigma * cfg.sigma;
  } else {
    result.predicted_electron_variance1 = nan;
    result.predicted_electron_variance2 = nan;
    result.electron_variance_sigma_only = nan;
  }
  return result;
}

void write_table1(std::ostream& out, const RunConfig& cfg,
                  const std::vector<Table1Row>& rows) {
  if (cfg.out_format == OutputFormat::Json) {
    json jrows = json::array();
    for (const auto& r : rows) {
      jrows.push_back({{"ratio", r.ratio},
                       {"k_linear_over_kmax", r.k_linear_over_kmax},
                       {"current_linear", r.current_linear},
                       {"k_nonlinear_over_kmax", r.k_nonlinear_over_kmax},
                       {"current_nonlinear", r.current_nonlinear}});
    }
    out << json{{"command", "table1"}, {"config", cfg.resolved()}, {"rows", jrows}}
               .dump(2)
        << "\n";
    return;
  }
  write_config_comments(out, cfg);
  out << "ratio,k_linear_over_kmax,current_linear,k_nonlinear_over_kmax,"
         "current_nonlinear\n";
  char buf[160];
  for (const auto& r : rows) {
    // Fixed decimal places keep the table stable across platforms.
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f,%.2f,%.2f,%.2f\n", r.ratio,
                  r.k_linear_over_kmax, r.current_linear,
                  r.k_nonlinear_over_kmax, r.current_nonlinear);
    out << buf;
  }
}

void write_fig2(std::ostream& out, const RunConfig& cfg,
                const std::vector<Fig2Row>& rows) {
  if (cfg.out_format == OutputFormat::Json) {
    json jrows = json::array();
    for (const auto& r : rows) {
      jrows.push_back(
          {{"alpha_sq", r.photons},
           {"eta_linear", r.eta_linear},
           {"eta_nonlinear", r.eta_nonlinear ? json(*r.eta_nonlinear) : json()},
           {"oversaturated", r.oversaturated}});
    }
    out << json{{"command", "fig2"}, {"config", cfg.resolved()}, {"rows", jrows}}
               .dump(2)
        << "\n";
    return;
  }
  write_config_comments(out, cfg);
  out << "alpha_sq,eta_linear,eta_nonlinear,oversaturated\n";
  for (const auto& r : rows) {
    out << format_number(r.photons) << ',' << format_number(r.eta_linear) << ','
        << (r.eta_nonlinear ? format_number(*r.eta_nonlinear) : "nan") << ','
        << (r.oversaturated ? 1 : 0) << "\n";
  }
}

void write_precision(std::ostream& out, const RunConfig& cfg,
                     const std::vector<PrecisionRow>& rows) {
  const bool sweep_shots =
      cfg.sweep_variable == "shots" || cfg.sweep_variable == "M";
  const char* x_name = sweep_shots ? "shots" : "alpha_sq";
  if (cfg.out_format == OutputFormat::Json) {
    json jrows = json::array();
    for (const auto& r : rows) {
      jrows.push_back(
          {{x_name, r.x},
           {"dchi_analytic", r.dchi_analytic},
           {"dchi_empirical",
            r.dchi_empirical ? json(*r.dchi_empirical) : json()}});
    }
    out << json{{"command", "precision"}, {"config", cfg.resolved()}, {"rows", jrows}}
               .dump(2)
        << "\n";
    return;
  }
  write_config_comments(out, cfg);
  out << x_name << ",dchi_analytic,dchi_empirical\n";
  for (const auto& r : rows) {
    out << format_number(r.x) << ',' << format_number(r.dchi_analytic) << ','
        << (r.dchi_empirical ? format_number(*r.dchi_empirical) : "") << "\n";
  }
}

void write_simulate(std::ostream& out, const RunConfig& cfg,
                    const SimulateResult& result) {
  const EnsembleStats& s = result.stats;
  const json jstats{{"shots", s.shots},
                    {"blocks", s.blocks},
                    {"mean_current1", s.mean_current1},
                    {"mean_current2", s.mean_current2},
                    {"var_current1", s.var_current1},
                    {"var_current2", s.var_current2},
                    {"estimator_mean", s.estimator_mean},
                    {"estimator_std", s.estimator_std},
                    {"clamp_fraction", s.clamp_fraction}};
  const json jpred{
      {"mean_current1", result.predicted_current1},
      {"mean_current2", result.predicted_current2},
      {"electron_variance1", result.predicted_electron_variance1},
      {"electron_variance2", result.predicted_electron_variance2},
      {"electron_variance_sigma_only", result.electron_variance_sigma_only}};
  out << json{{"command", "simulate"},
              {"config", cfg.resolved()},
              {"stats", jstats},
              {"predicted", jpred}}
             .dump(2)
      << "\n";
}

void run(const std::string& subcommand, const RunConfig& cfg) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) throw IoError("cannot open output file: " + cfg.out_path);
    out = &file;
  }

  if (subcommand == "table1") {
    write_table1(*out, cfg, table1_rows(cfg));
  } else if (subcommand == "fig2") {
    write_fig2(*out, cfg, fig2_rows(cfg));
  } else if (subcommand == "precision") {
    write_precision(*out, cfg, precision_rows(cfg));
  } else if (subcommand == "simulate") {
    write_simulate(*out, cfg, simulate(cfg));
  } else {
    throw ConfigError("unknown subcommand: " + subcommand);
  }

  out->flush();
  if (!*out) throw IoError("write failed" +
                           (cfg.out_path.empty() ? std::string()
                                                 : ": " + cfg.out_path));
}

}  // namespace homodyne::commands
