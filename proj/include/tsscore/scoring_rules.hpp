#pragma once

#include "tsscore/linear_models.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace tsscore {

/// Objective value of a scoring rule or log-likelihood. Values are only
/// comparable within one estimator: each objective drops its own constants.
using ScoreValue = double;

enum class EstimatorKind { FullML, PairwiseML, HyvarinenUnivariate, HyvarinenWishart };

inline constexpr std::array<EstimatorKind, 4> kAllEstimators = {
    EstimatorKind::FullML, EstimatorKind::PairwiseML,
    EstimatorKind::HyvarinenUnivariate, EstimatorKind::HyvarinenWishart};

/// CLI/CSV names: full, pairwise, hyv, hyv-wishart.
std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(std::string_view text);

// AR(1) -------------------------------------------------------------------

/// Full log-likelihood l(mu, sigma2, phi) with additive constants dropped.
ScoreValue ar1_full_loglik(std::span<const double> y, const Ar1Params& p);

/// Consecutive pairwise log-likelihood over the pairs (y_{t-1}, y_t).
ScoreValue ar1_pairwise_loglik(std::span<const double> y, const Ar1Params& p);

struct PairwiseClosedForm {
  double phi = 0.0;
  double sigma2 = 0.0;
  /// |phi| >= 1: the estimate left the stationary region.
  bool boundary = false;
};

/// Joint pairwise-likelihood estimate of (phi, sigma2) with mu = 0 known,
/// pooled over all rows:
///   phi    = 2 sum y_t y_{t-1} / sum (y_t^2 + y_{t-1}^2)
///   sigma2 = sum (y_t^2 + y_{t-1}^2) / (2 nu (T - 1)) * (1 - phi^2)
/// Throws DegenerateDataError when the denominator vanishes.
PairwiseClosedForm ar1_pairwise_closed_form(const SeriesMatrix& y);

/// Closed-form Hyvarinen score of one AR(1) series, using the tridiagonal
/// structure of the precision matrix. Requires T >= 2.
ScoreValue ar1_hyvarinen(std::span<const double> y, const Ar1Params& p);

// Generic Gaussian ----------------------------------------------------------

/// Hyvarinen score of N(mu 1, precision^{-1}) at y:
///   -trace(P) + 1/2 || P (y - mu 1) ||^2
ScoreValue gaussian_hyvarinen(std::span<const double> y, const SymMatrix& precision,
                              double mu);

// MA(1) -------------------------------------------------------------------

ScoreValue ma1_full_loglik(std::span<const double> y, const Ma1Params& p);
ScoreValue ma1_pairwise_loglik(std::span<const double> y, const Ma1Params& p);
ScoreValue ma1_hyvarinen(std::span<const double> y, const Ma1Params& p);

// Minimization-sign objectives ------------------------------------------------

/// Per-series objective to be minimized: negated log-likelihoods for the
/// likelihood estimators, the Hyvarinen score otherwise. HyvarinenWishart is
/// not a per-series sum and throws UnsupportedKindError.
ScoreValue series_score(std::span<const double> y, EstimatorKind kind,
                        const ModelSpec& model, double theta);

/// series_score for every row of `y`, sharing the per-theta setup
/// (precision matrix, log-determinant) across rows.
std::vector<double> series_scores(const SeriesMatrix& y, EstimatorKind kind,
                                  const ModelSpec& model, double theta);

/// Sum of series_scores over rows.
ScoreValue total_score(const SeriesMatrix& y, EstimatorKind kind, const ModelSpec& model,
                       double theta);

}  // namespace tsscore
