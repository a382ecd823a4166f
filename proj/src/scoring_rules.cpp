#include "tsscore/scoring_rules.hpp"

#include "tsscore/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace tsscore {

namespace {

void require_length(std::span<const double> y, std::size_t min_len, const char* what) {
  if (y.size() < min_len) {
    throw ValidationError(std::string(what) + " requires a series of length >= " +
                          std::to_string(min_len));
  }
}

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> y) {
  return {y.data(), static_cast<Eigen::Index>(y.size())};
}

// Rows of `y` minus mu.
RowMajorMatrix centered(const SeriesMatrix& y, double mu) {
  return y.data().array() - mu;
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::FullML: return "full";
    case EstimatorKind::PairwiseML: return "pairwise";
    case EstimatorKind::HyvarinenUnivariate: return "hyv";
    case EstimatorKind::HyvarinenWishart: return "hyv-wishart";
  }
  return "?";
}

EstimatorKind parse_estimator_kind(std::string_view text) {
  for (auto kind : kAllEstimators) {
    if (to_string(kind) == text) return kind;
  }
  throw ValidationError("unknown estimator '" + std::string(text) +
                        "' (expected full, pairwise, hyv or hyv-wishart)");
}

// ---------------------------------------------------------------------------
// AR(1)

ScoreValue ar1_full_loglik(std::span<const double> y, const Ar1Params& p) {
  p.validate();
  require_length(y, 2, "AR(1) log-likelihood");
  const std::size_t n = y.size();
  double sum_sq = 0.0;
  double inner_sq = 0.0;
  double lag_prod = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double d = y[t] - p.mu;
    sum_sq += d * d;
    if (t > 0 && t + 1 < n) inner_sq += d * d;
    if (t > 0) lag_prod += d * (y[t - 1] - p.mu);
  }
  const double quad = sum_sq + p.phi * p.phi * inner_sq - 2.0 * p.phi * lag_prod;
  return -quad / (2.0 * p.sigma2) - 0.5 * static_cast<double>(n) * std::log(p.sigma2) +
         0.5 * std::log(1.0 - p.phi * p.phi);
}

ScoreValue ar1_pairwise_loglik(std::span<const double> y, const Ar1Params& p) {
  p.validate();
  require_length(y, 2, "AR(1) pairwise log-likelihood");
  const std::size_t n = y.size();
  double quad = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    const double a = y[t] - p.mu;
    const double b = y[t - 1] - p.mu;
    quad += a * a + b * b - 2.0 * p.phi * a * b;
  }
  const double pairs = static_cast<double>(n - 1);
  return -quad / (2.0 * p.sigma2) - pairs * std::log(p.sigma2) +
         0.5 * pairs * std::log(1.0 - p.phi * p.phi);
}

PairwiseClosedForm ar1_pairwise_closed_form(const SeriesMatrix& y) {
  if (y.t_len() < 2) throw ValidationError("pairwise estimator requires T >= 2");
  double cross = 0.0;
  double squares = 0.0;
  for (Eigen::Index i = 0; i < y.nu(); ++i) {
    const auto row = y.row(i);
    for (std::size_t t = 1; t < row.size(); ++t) {
      cross += row[t] * row[t - 1];
      squares += row[t] * row[t] + row[t - 1] * row[t - 1];
    }
  }
  if (squares == 0.0) {
    throw DegenerateDataError("pairwise estimator: sum of squared lag pairs is zero");
  }
  PairwiseClosedForm out;
  out.phi = 2.0 * cross / squares;
  const double pairs = static_cast<double>(y.nu()) * static_cast<double>(y.t_len() - 1);
  out.sigma2 = squares / (2.0 * pairs) * (1.0 - out.phi * out.phi);
  out.boundary = !(std::abs(out.phi) < 1.0);
  return out;
}

ScoreValue ar1_hyvarinen(std::span<const double> y, const Ar1Params& p) {
  p.validate();
  require_length(y, 2, "AR(1) Hyvarinen score");
  const std::size_t n = y.size();
  const double phi = p.phi;
  const double mu = p.mu;
  double interior = 0.0;
  for (std::size_t t = 1; t + 1 < n; ++t) {
    const double g = (1.0 + phi * phi) * (y[t] - mu) - phi * (y[t - 1] + y[t + 1] - 2.0 * mu);
    interior += g * g;
  }
  const double first = y[0] - mu - phi * (y[1] - mu);
  const double last = y[n - 1] - mu - phi * (y[n - 2] - mu);
  const double s4 = p.sigma2 * p.sigma2;
  const double trace = (2.0 + static_cast<double>(n - 2) * (1.0 + phi * phi)) / p.sigma2;
  return (interior + first * first + last * last) / (2.0 * s4) - trace;
}

// ---------------------------------------------------------------------------
// Generic Gaussian

ScoreValue gaussian_hyvarinen(std::span<const double> y, const SymMatrix& precision,
                              double mu) {
  if (static_cast<Eigen::Index>(y.size()) != precision.dim()) {
    throw ValidationError("gaussian_hyvarinen: data length " + std::to_string(y.size()) +
                          " does not match precision dimension " +
                          std::to_string(precision.dim()));
  }
  const Eigen::VectorXd grad = precision.dense() * (as_vector(y).array() - mu).matrix();
  return -precision.trace() + 0.5 * grad.squaredNorm();
}

// ---------------------------------------------------------------------------
// MA(1)

ScoreValue ma1_full_loglik(std::span<const double> y, const Ma1Params& p) {
  p.validate();
  require_length(y, 1, "MA(1) log-likelihood");
  const auto t_len = static_cast<Eigen::Index>(y.size());
  const double log_det = ma1_covariance(p, t_len).log_det();
  const SymMatrix prec = ma1_precision(p, t_len);
  const Eigen::VectorXd d = as_vector(y).array() - p.mu;
  return -0.5 * log_det - 0.5 * d.dot(prec.dense() * d);
}

ScoreValue ma1_pairwise_loglik(std::span<const double> y, const Ma1Params& p) {
  p.validate();
  require_length(y, 2, "MA(1) pairwise log-likelihood");
  const double a2 = p.alpha * p.alpha;
  const double denom = 1.0 + a2 + a2 * a2;
  double quad = 0.0;
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double a = y[t] - p.mu;
    const double b = y[t - 1] - p.mu;
    quad += ((a * a + b * b) * (1.0 + a2) - 2.0 * a * b * p.alpha) / denom;
  }
  const double pairs = static_cast<double>(y.size() - 1);
  return -quad / (2.0 * p.sigma2) - 0.5 * pairs * std::log(denom) -
         pairs * std::log(p.sigma2);
}

ScoreValue ma1_hyvarinen(std::span<const double> y, const Ma1Params& p) {
  p.validate();
  require_length(y, 1, "MA(1) Hyvarinen score");
  return gaussian_hyvarinen(y, ma1_precision(p, static_cast<Eigen::Index>(y.size())), p.mu);
}

// ---------------------------------------------------------------------------
// Minimization-sign dispatch

ScoreValue series_score(std::span<const double> y, EstimatorKind kind,
                        const ModelSpec& model, double theta) {
  if (kind == EstimatorKind::HyvarinenWishart) {
    throw UnsupportedKindError("hyv-wishart is not a per-series score");
  }
  if (model.kind == ModelKind::Ar1) {
    const auto p = model.ar1(theta);
    switch (kind) {
      case EstimatorKind::FullML: return -ar1_full_loglik(y, p);
      case EstimatorKind::PairwiseML: return -ar1_pairwise_loglik(y, p);
      default: return ar1_hyvarinen(y, p);
    }
  }
  const auto p = model.ma1(theta);
  switch (kind) {
    case EstimatorKind::FullML: return -ma1_full_loglik(y, p);
    case EstimatorKind::PairwiseML: return -ma1_pairwise_loglik(y, p);
    default: return ma1_hyvarinen(y, p);
  }
}

std::vector<double> series_scores(const SeriesMatrix& y, EstimatorKind kind,
                                  const ModelSpec& model, double theta) {
  if (kind == EstimatorKind::HyvarinenWishart) {
    throw UnsupportedKindError("hyv-wishart is not a per-series score");
  }
  std::vector<double> out(static_cast<std::size_t>(y.nu()));
  const bool dense_ma1 = model.kind == ModelKind::Ma1 && kind != EstimatorKind::PairwiseML;
  if (!dense_ma1) {
    // O(T) closed forms; nothing to share across rows.
    for (Eigen::Index i = 0; i < y.nu(); ++i) {
      out[static_cast<std::size_t>(i)] = series_score(y.row(i), kind, model, theta);
    }
    return out;
  }

  const auto p = model.ma1(theta);
  p.validate();
  const SymMatrix prec = ma1_precision(p, y.t_len());
  const RowMajorMatrix d = centered(y, p.mu);
  const RowMajorMatrix pd = d * prec.dense();
  if (kind == EstimatorKind::FullML) {
    const double half_log_det = 0.5 * ma1_covariance(p, y.t_len()).log_det();
    const Eigen::VectorXd quad = (pd.array() * d.array()).rowwise().sum();
    for (Eigen::Index i = 0; i < y.nu(); ++i) {
      out[static_cast<std::size_t>(i)] = half_log_det + 0.5 * quad(i);
    }
  } else {
    const double trace = prec.trace();
    const Eigen::VectorXd norms = pd.rowwise().squaredNorm();
    for (Eigen::Index i = 0; i < y.nu(); ++i) {
      out[static_cast<std::size_t>(i)] = -trace + 0.5 * norms(i);
    }
  }
  return out;
}

ScoreValue total_score(const SeriesMatrix& y, EstimatorKind kind, const ModelSpec& model,
                       double theta) {
  const auto values = series_scores(y, kind, model, theta);
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace tsscore
