#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "homodyne/config.hpp"
#include "homodyne/montecarlo.hpp"

namespace homodyne::commands {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One row of the linear-vs-nonlinear detector comparison table.
struct Table1Row {
  double ratio;                    // N / N_sat
  double k_linear_over_kmax;       // linear treatment
  double current_linear;           // amperes
  double k_nonlinear_over_kmax;    // saturating treatment
  double current_nonlinear;        // amperes
};

std::vector<Table1Row> table1_rows(const RunConfig& cfg);

/// One point of the error-ratio sweep over signal photon number.
struct Fig2Row {
  double photons;                        // swept |alpha|^2
  double eta_linear;                     // linear-protocol error ratio
  std::optional<double> eta_nonlinear;   // absent when inversion oversaturates
  bool oversaturated;
};

std::vector<Fig2Row> fig2_rows(const RunConfig& cfg);

/// One point of the precision sweep (over alpha_sq or shots).
struct PrecisionRow {
  double x;
  double dchi_analytic;
  std::optional<double> dchi_empirical;
};

std::vector<PrecisionRow> precision_rows(const RunConfig& cfg);

struct SimulateResult {
  EnsembleStats stats;
  // Closed-form predictions for the same setup, for side-by-side comparison.
  double predicted_current1;
  double predicted_current2;
  double predicted_electron_variance1;  // exact compound variance
  double predicted_electron_variance2;
  double electron_variance_sigma_only;  // the sigma^2-only approximation
};

SimulateResult simulate(const RunConfig& cfg);

// Writers: CSV embeds the resolved config as '#' comment rows; JSON carries it
// as a sibling "config" object.
void write_table1(std::ostream& out, const RunConfig& cfg,
                  const std::vector<Table1Row>& rows);
void write_fig2(std::ostream& out, const RunConfig& cfg,
                const std::vector<Fig2Row>& rows);
void write_precision(std::ostream& out, const RunConfig& cfg,
                     const std::vector<PrecisionRow>& rows);
void write_simulate(std::ostream& out, const RunConfig& cfg,
                    const SimulateResult& result);

/// Runs one subcommand end to end, writing to cfg.out_path (or stdout).
void run(const std::string& subcommand, const RunConfig& cfg);

/// CSV number formatting: '.' decimal separator, scientific notation for
/// |value| outside [1e-3, 1e6).
std::string format_number(double value);

}  // namespace homodyne::commands
