#include "tsscore/inference.hpp"

#include "tsscore/errors.hpp"
#include "tsscore/optimize.hpp"
#include "tsscore/wishart_score.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace tsscore {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBoundaryMargin = 1e-4;

bool at_boundary(double theta) { return std::abs(theta) >= kParamUpper - kBoundaryMargin; }

struct MeanAndSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanAndSe mean_and_se(const std::vector<double>& xs) {
  const auto n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

GodambeComponents assemble(const std::vector<double>& grads, const std::vector<double>& hessians,
                           std::optional<double> analytic_k, InformationMethod method,
                           InformationScope scope) {
  std::vector<double> squares(grads.size());
  std::transform(grads.begin(), grads.end(), squares.begin(), [](double g) { return g * g; });
  const auto j = mean_and_se(squares);
  GodambeComponents out;
  out.method = method;
  out.scope = scope;
  out.j_hat = j.mean;
  out.j_se = j.se;
  if (analytic_k) {
    out.k_hat = *analytic_k;
    out.k_se = 0.0;
  } else {
    const auto k = mean_and_se(hessians);
    out.k_hat = k.mean;
    out.k_se = k.se;
  }
  if (!(out.j_hat > 0.0)) throw DegenerateDataError("variability estimate J is zero");
  out.g_hat = out.k_hat * out.k_hat / out.j_hat;
  const double rel_k = out.k_hat != 0.0 ? out.k_se / out.k_hat : 0.0;
  const double rel_j = out.j_se / out.j_hat;
  out.g_se = out.g_hat * std::sqrt(4.0 * rel_k * rel_k + rel_j * rel_j);
  return out;
}

// Row-wise central differences of the per-series objective at theta.
GodambeComponents per_series_components(const SeriesMatrix& y, EstimatorKind kind,
                                        const ModelSpec& model, double theta,
                                        InformationMethod method) {
  if (y.nu() < 2) throw ValidationError("Godambe estimation needs at least two series");
  const double hg = default_grad_step(theta);
  const double hh = default_hess_step(theta);
  const auto f_gu = series_scores(y, kind, model, theta + hg);
  const auto f_gd = series_scores(y, kind, model, theta - hg);
  const auto f_hu = series_scores(y, kind, model, theta + hh);
  const auto f_mid = series_scores(y, kind, model, theta);
  const auto f_hd = series_scores(y, kind, model, theta - hh);

  const auto n = static_cast<std::size_t>(y.nu());
  std::vector<double> grads(n);
  std::vector<double> hessians(n);
  for (std::size_t i = 0; i < n; ++i) {
    grads[i] = (f_gu[i] - f_gd[i]) / (2.0 * hg);
    hessians[i] = (f_hu[i] - 2.0 * f_mid[i] + f_hd[i]) / (hh * hh);
    if (!std::isfinite(grads[i]) || !std::isfinite(hessians[i])) {
      throw OptimizationError("non-finite score derivative at theta = " + std::to_string(theta));
    }
  }
  // Identical gradients on every row: the sample cannot measure variability.
  if (std::all_of(grads.begin(), grads.end(), [&](double g) { return g == grads.front(); })) {
    throw DegenerateDataError("all series give the same score gradient; J cannot be estimated");
  }
  return assemble(grads, hessians, std::nullopt, method, InformationScope::PerSeries);
}

// d Sigma / d theta at unit scale, times sigma2.
RowMajorMatrix covariance_derivative(const ModelSpec& model, double theta, Eigen::Index t_len) {
  RowMajorMatrix d = RowMajorMatrix::Zero(t_len, t_len);
  if (model.kind == ModelKind::Ma1) {
    for (Eigen::Index i = 0; i < t_len; ++i) {
      d(i, i) = 2.0 * theta * model.sigma2;
      if (i + 1 < t_len) d(i, i + 1) = d(i + 1, i) = model.sigma2;
    }
    return d;
  }
  const double one_minus = 1.0 - theta * theta;
  for (Eigen::Index l = 0; l < t_len; ++l) {
    for (Eigen::Index m = 0; m < t_len; ++m) {
      const auto k = static_cast<double>(std::abs(l - m));
      const double lag_term = k == 0.0 ? 0.0 : k * std::pow(theta, k - 1.0) / one_minus;
      d(l, m) = model.sigma2 * (lag_term + 2.0 * std::pow(theta, k + 1.0) / (one_minus * one_minus));
    }
  }
  return d;
}

}  // namespace

double GodambeComponents::sd(Eigen::Index nu) const {
  const double units = scope == InformationScope::PerSeries ? static_cast<double>(nu) : 1.0;
  if (!(g_hat > 0.0)) throw DegenerateDataError("Godambe information is not positive");
  return 1.0 / std::sqrt(units * g_hat);
}

GodambeComponents godambe_empirical(const SeriesMatrix& y, EstimatorKind kind,
                                    const ModelSpec& model, double theta_hat) {
  if (kind == EstimatorKind::HyvarinenWishart) {
    throw UnsupportedKindError("empirical Godambe needs a per-series score");
  }
  return per_series_components(y, kind, model, theta_hat, InformationMethod::Empirical);
}

GodambeComponents godambe_montecarlo(const ModelSpec& model, double theta_hat,
                                     EstimatorKind kind, const MonteCarloOptions& opts) {
  if (opts.draws < 50) throw ValidationError("Monte Carlo Godambe needs B >= 50");
  if (kind != EstimatorKind::HyvarinenWishart) {
    const auto y = sample(model, theta_hat, opts.draws, opts.t_len, opts.seed);
    return per_series_components(y, kind, model, theta_hat, InformationMethod::MonteCarlo);
  }

  const auto b_count = static_cast<std::size_t>(opts.draws);
  const SymMatrix dprec = precision_derivative(model, theta_hat, opts.t_len);
  std::vector<double> grads(b_count);
  std::vector<double> hessians;
  std::optional<double> analytic_k;
  if (model.kind == ModelKind::Ar1) {
    analytic_k = k_analytic_ar1(theta_hat, opts.t_len) / (model.sigma2 * model.sigma2);
  } else {
    hessians.resize(b_count);
  }
  for (std::size_t b = 0; b < b_count; ++b) {
    const auto y = sample(model, theta_hat, opts.nu, opts.t_len, derive_seed(opts.seed, b));
    const WishartContext ctx(y, model);
    grads[b] = hw_grad(ctx, theta_hat, dprec);
    if (!analytic_k) {
      hessians[b] = num_hess([&](double lambda) { return hw_score(ctx, lambda); }, theta_hat);
    }
  }
  return assemble(grads, hessians, analytic_k, InformationMethod::MonteCarlo,
                  InformationScope::WholeSample);
}

double fisher_information(const ModelSpec& model, double theta0, InformationMethod method,
                          const FisherOptions& opts) {
  switch (method) {
    case InformationMethod::Empirical: {
      const auto y = sample(model, theta0, opts.sample_size, opts.t_len, opts.seed);
      return godambe_empirical(y, EstimatorKind::FullML, model, theta0).g_hat;
    }
    case InformationMethod::MonteCarlo: {
      MonteCarloOptions mc;
      mc.draws = opts.sample_size;
      mc.seed = opts.seed;
      mc.t_len = opts.t_len;
      return godambe_montecarlo(model, theta0, EstimatorKind::FullML, mc).g_hat;
    }
    case InformationMethod::Analytic: {
      // 1/2 tr(Sigma^{-1} dSigma Sigma^{-1} dSigma)
      const auto prec = precision(model, theta0, opts.t_len).dense();
      const RowMajorMatrix a = prec * covariance_derivative(model, theta0, opts.t_len);
      return 0.5 * (a * a).trace();
    }
  }
  return kNaN;
}

double are(double sd_mle, double sd_est) {
  if (!(sd_mle > 0.0) || !(sd_est > 0.0)) {
    throw ValidationError("ARE needs positive standard deviations");
  }
  const double ratio = sd_mle / sd_est;
  return ratio * ratio;
}

EstimateRecord fit(const SeriesMatrix& y, EstimatorKind kind, const ModelSpec& model,
                   const FitOptions& opts) {
  if (!(model.sigma2 > 0.0)) throw DomainError("innovation variance must be > 0");
  EstimateRecord rec;
  rec.kind = kind;
  rec.are = kNaN;

  if (kind == EstimatorKind::HyvarinenWishart) {
    const auto est = hw_estimate(y, model);
    rec.estimate = est.lambda;
    rec.boundary_flag = est.boundary;
  } else {
    // With sigma2 known the AR(1) pairwise score equation is a cubic in phi.
    rec.estimate = minimize_scalar(
        [&](double theta) { return total_score(y, kind, model, theta); }, kParamLower,
        kParamUpper);
    rec.boundary_flag = at_boundary(rec.estimate);
  }

  if (rec.boundary_flag) {
    rec.sd = kNaN;
    return rec;
  }

  if (kind == EstimatorKind::HyvarinenWishart) {
    MonteCarloOptions mc;
    mc.draws = opts.mc_draws;
    mc.seed = opts.mc_seed;
    mc.t_len = y.t_len();
    mc.nu = y.nu();
    rec.info = godambe_montecarlo(model, rec.estimate, kind, mc);
  } else {
    rec.info = godambe_empirical(y, kind, model, rec.estimate);
  }
  rec.sd = rec.info.sd(y.nu());
  if (opts.sd_mle) rec.are = are(*opts.sd_mle, rec.sd);
  return rec;
}

}  // namespace tsscore
