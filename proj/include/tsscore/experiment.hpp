#pragma once

#include "tsscore/inference.hpp"
#include "tsscore/linear_models.hpp"
#include "tsscore/scoring_rules.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsscore {

struct ExperimentConfig {
  ModelKind model = ModelKind::Ar1;
  std::vector<double> param_grid;
  Eigen::Index nu = 200;
  Eigen::Index t_len = 50;
  int replicates = 200;
  int mc_b = 500;
  std::uint64_t seed = 42;
  std::vector<EstimatorKind> estimators{kAllEstimators.begin(), kAllEstimators.end()};
  std::string out_path;
  std::string svg_path;     ///< optional ARE chart
  std::string sd_svg_path;  ///< optional sd chart
  /// Worker threads; 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws ValidationError naming the offending field.
  void validate() const;
  /// Requested estimators plus FullML, in canonical order.
  std::vector<EstimatorKind> effective_estimators() const;
};

/// Fits of every estimator on one simulated dataset.
struct ReplicateResult {
  std::size_t grid_index = 0;
  int replicate = 0;
  /// Indexed like ExperimentConfig::effective_estimators(); empty on failure.
  std::vector<std::optional<EstimateRecord>> fits;
  std::vector<std::string> errors;
};

struct ReportRow {
  ModelKind model = ModelKind::Ar1;
  double param_true = 0.0;
  EstimatorKind estimator = EstimatorKind::FullML;
  double mean_est = 0.0;
  double mean_sd = 0.0;
  double are = 0.0;
  /// Replicates that produced a fit; n_boundary of these were flagged and
  /// excluded from the means.
  int n_replicates = 0;
  int n_boundary = 0;
  Eigen::Index nu = 0;
  Eigen::Index t_len = 0;
  std::uint64_t seed = 0;
};

/// Seeds for replicate `rep` at grid position `grid_index`.
std::uint64_t data_seed(std::uint64_t master, std::size_t grid_index, int rep);
std::uint64_t mc_seed(std::uint64_t data_seed);

/// Simulates and fits every replicate. Results are ordered by
/// (grid_index, replicate) and do not depend on the thread count.
std::vector<ReplicateResult> run_replicates(const ExperimentConfig& cfg);

/// Means of estimates and sds per (grid value, estimator); ARE from the
/// mean sds with FullML as baseline. Throws std::runtime_error if more than
/// 10% of the fits for any cell failed.
std::vector<ReportRow> aggregate(const ExperimentConfig& cfg,
                                 const std::vector<ReplicateResult>& results);

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg);

// Reporting ------------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "model,param_true,estimator,mean_est,mean_sd,are,n_replicates,n_boundary,nu,t_len,seed";

/// CSV text: header then rows sorted by (model, param_true, estimator), reals
/// printed with 6 significant digits.
std::string format_csv(std::vector<ReportRow> rows);
void emit_csv(const std::vector<ReportRow>& rows, const std::string& path);

/// Line chart of ARE against the true parameter, one polyline per non-MLE
/// estimator, ARE axis fixed to [0, 1.1]. Rows must share one model.
std::string format_are_svg(const std::vector<ReportRow>& rows);
void emit_are_svg(const std::vector<ReportRow>& rows, const std::string& path);

/// Same layout for the mean asymptotic sd, including the MLE.
std::string format_sd_svg(const std::vector<ReportRow>& rows);
void emit_sd_svg(const std::vector<ReportRow>& rows, const std::string& path);

// Config files -----------------------------------------------------------------

/// Applies `key=value` lines (keys are the long CLI flag names without the
/// leading dashes; `#` starts a comment) onto `cfg`.
void apply_config_text(const std::string& text, ExperimentConfig& cfg);
void apply_config_file(const std::string& path, ExperimentConfig& cfg);
/// Applies one key/value pair; throws ValidationError on unknown keys or
/// unparsable values.
void apply_config_value(const std::string& key, const std::string& value, ExperimentConfig& cfg);

std::vector<double> parse_grid(const std::string& text);
std::vector<EstimatorKind> parse_estimators(const std::string& text);

}  // namespace tsscore
