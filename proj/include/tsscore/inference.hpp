#pragma once

#include "tsscore/linear_models.hpp"
#include "tsscore/scoring_rules.hpp"

#include <cstdint>
#include <optional>

namespace tsscore {

enum class InformationMethod { Empirical, MonteCarlo, Analytic };

/// Whether the components describe one series (the asymptotic variance is
/// then 1 / (nu G)) or the whole nu-series sample (1 / G).
enum class InformationScope { PerSeries, WholeSample };

/// Scalar Godambe information G = K^2 / J of an unbiased estimating equation.
struct GodambeComponents {
  double j_hat = 0.0;  ///< variability E[s^2]
  double k_hat = 0.0;  ///< sensitivity E[ds/dtheta]
  double g_hat = 0.0;  ///< k_hat^2 / j_hat
  /// Standard errors of the averages behind j_hat and k_hat (zero when a
  /// component is analytic), and the delta-method standard error of g_hat.
  double j_se = 0.0;
  double k_se = 0.0;
  double g_se = 0.0;
  InformationMethod method = InformationMethod::Empirical;
  InformationScope scope = InformationScope::PerSeries;

  /// Asymptotic standard deviation of the estimator from nu series.
  double sd(Eigen::Index nu) const;
};

/// One estimator applied to one dataset.
struct EstimateRecord {
  EstimatorKind kind = EstimatorKind::FullML;
  double estimate = 0.0;
  /// NaN when boundary_flag is set.
  double sd = 0.0;
  /// (sd_MLE / sd)^2, NaN unless an MLE sd was supplied.
  double are = 0.0;
  bool boundary_flag = false;
  GodambeComponents info;
};

/// Per-series Godambe components with expectations replaced by averages over
/// the rows of `y`; per-row derivatives by central differences.
/// Throws DegenerateDataError if the rows carry no variability.
GodambeComponents godambe_empirical(const SeriesMatrix& y, EstimatorKind kind,
                                    const ModelSpec& model, double theta_hat);

struct MonteCarloOptions {
  int draws = 500;             ///< B
  std::uint64_t seed = 0;
  Eigen::Index t_len = 50;
  /// Series per Wishart draw; only used by HyvarinenWishart.
  Eigen::Index nu = 200;
};

/// Godambe components from B fresh realizations simulated at theta_hat.
/// Per-series kinds draw B single series; HyvarinenWishart draws B sums of
/// squares from nu series each and returns WholeSample components, with the
/// analytic sensitivity for AR(1).
GodambeComponents godambe_montecarlo(const ModelSpec& model, double theta_hat,
                                     EstimatorKind kind, const MonteCarloOptions& opts);

struct FisherOptions {
  Eigen::Index t_len = 50;
  /// Series simulated for the empirical method, or B for Monte Carlo.
  int sample_size = 2000;
  std::uint64_t seed = 0;
};

/// Per-series Fisher information about theta at theta0: the Godambe
/// information of the log-score evaluated at the true parameter.
double fisher_information(const ModelSpec& model, double theta0, InformationMethod method,
                          const FisherOptions& opts);

/// (sd_mle / sd_est)^2.
double are(double sd_mle, double sd_est);

struct FitOptions {
  int mc_draws = 500;
  std::uint64_t mc_seed = 0;
  std::optional<double> sd_mle;
};

/// Minimum-score fit with its asymptotic standard deviation: empirical
/// Godambe information for the per-series estimators, Monte Carlo for the
/// Wishart estimator. Every per-series estimate minimizes total_score with
/// the model's mu and sigma2 held fixed.
EstimateRecord fit(const SeriesMatrix& y, EstimatorKind kind, const ModelSpec& model,
                   const FitOptions& opts = {});

}  // namespace tsscore
