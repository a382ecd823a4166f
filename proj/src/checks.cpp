#include "tsscore/checks.hpp"

#include "tsscore/inference.hpp"
#include "tsscore/optimize.hpp"
#include "tsscore/scoring_rules.hpp"
#include "tsscore/wishart_score.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace tsscore {

namespace {

std::string describe(double observed, double threshold) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "max error %.3g (threshold %.3g)", observed, threshold);
  return buf;
}

CheckResult bounded(std::string name, double observed, double threshold) {
  return {std::move(name), observed <= threshold, describe(observed, threshold)};
}

constexpr std::array<double, 5> kThetaGrid = {-0.9, -0.5, 0.0, 0.5, 0.9};

CheckResult gaussian_equivalence(std::uint64_t seed) {
  double worst = 0.0;
  for (auto kind : {ModelKind::Ar1, ModelKind::Ma1}) {
    const ModelSpec model{kind, 0.3, 1.7};
    for (Eigen::Index t = 2; t <= 20; ++t) {
      for (double theta : kThetaGrid) {
        const auto y = sample(model, theta, 3, t, derive_seed(seed, static_cast<std::uint64_t>(t)));
        const auto prec = precision(model, theta, t);
        for (Eigen::Index i = 0; i < y.nu(); ++i) {
          const double closed = kind == ModelKind::Ar1 ? ar1_hyvarinen(y.row(i), model.ar1(theta))
                                                       : ma1_hyvarinen(y.row(i), model.ma1(theta));
          worst = std::max(worst, std::abs(closed - gaussian_hyvarinen(y.row(i), prec, model.mu)));
        }
      }
    }
  }
  return bounded("closed-form Hyvarinen == generic Gaussian form", worst, 1e-8);
}

CheckResult precision_inversion() {
  double worst = 0.0;
  for (auto kind : {ModelKind::Ar1, ModelKind::Ma1}) {
    const ModelSpec model{kind, 0.0, 1.3};
    for (Eigen::Index t = 1; t <= 20; ++t) {
      for (double theta : kThetaGrid) {
        const Eigen::MatrixXd dense_inv = covariance(model, theta, t).dense().inverse();
        const auto analytic = precision(model, theta, t).dense();
        worst = std::max(worst, (analytic - dense_inv).cwiseAbs().maxCoeff());
      }
    }
  }
  return bounded("analytic precision == dense inverse", worst, 1e-10);
}

CheckResult sensitivity_double_sum() {
  double worst = 0.0;
  const ModelSpec model{ModelKind::Ar1, 0.0, 1.0};
  for (Eigen::Index t = 2; t <= 50; ++t) {
    for (double phi : kThetaGrid) {
      const auto d = precision_derivative(model, phi, t);
      double sum = 0.0;
      for (Eigen::Index i = 0; i < t; ++i) {
        for (Eigen::Index j = 0; j < t; ++j) sum += d(i, j) * d(i, j);
      }
      worst = std::max(worst, std::abs(k_analytic_ar1(phi, t) - 0.25 * sum));
    }
  }
  return bounded("K(phi) == 1/4 sum (d lambda^{ji})^2", worst, 1e-10);
}

CheckResult wishart_gradient(std::uint64_t seed) {
  double worst = 0.0;
  for (auto kind : {ModelKind::Ar1, ModelKind::Ma1}) {
    const ModelSpec model{kind, 0.0, 1.0};
    for (Eigen::Index t : {3, 5, 10}) {
      for (double theta : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
        const auto y = sample(model, theta, 4 * t, t, derive_seed(seed, static_cast<std::uint64_t>(t)));
        const WishartContext ctx(y, model);
        const double analytic = hw_grad(ctx, theta);
        const double fd = num_grad([&](double l) { return hw_score(ctx, l); }, theta, 1e-5);
        worst = std::max(worst, std::abs(analytic - fd) / std::max(1.0, std::abs(fd)));
      }
    }
  }
  return bounded("Wishart gradient == finite differences (relative)", worst, 1e-4);
}

CheckResult pairwise_sigma2(std::uint64_t seed) {
  const auto y = sample_ar1({0.0, 1.0, 0.5}, 2000, 50, seed);
  const auto est = ar1_pairwise_closed_form(y);
  return bounded("pairwise sigma2 estimate -> 1 at nu = 2000", std::abs(est.sigma2 - 1.0), 0.02);
}

CheckResult unbiasedness(std::uint64_t seed) {
  // Largest |mean gradient| / standard error over kinds, models and theta.
  double worst = 0.0;
  std::uint64_t stream = 0;
  for (auto model_kind : {ModelKind::Ar1, ModelKind::Ma1}) {
    const ModelSpec model{model_kind, 0.0, 1.0};
    for (double theta : {-0.5, 0.0, 0.5}) {
      const auto y = sample(model, theta, 2000, 20, derive_seed(seed, ++stream));
      for (auto kind : {EstimatorKind::FullML, EstimatorKind::PairwiseML,
                        EstimatorKind::HyvarinenUnivariate}) {
        const auto info = godambe_empirical(y, kind, model, theta);
        const double h = default_grad_step(theta);
        const auto up = series_scores(y, kind, model, theta + h);
        const auto down = series_scores(y, kind, model, theta - h);
        double sum = 0.0;
        for (std::size_t i = 0; i < up.size(); ++i) sum += (up[i] - down[i]) / (2 * h);
        const double mean = sum / static_cast<double>(up.size());
        const double se = std::sqrt(info.j_hat / static_cast<double>(up.size()));
        worst = std::max(worst, std::abs(mean) / se);
      }
      std::vector<double> grads;
      for (int b = 0; b < 1000; ++b) {
        const auto yw = sample(model, theta, 50, 10, derive_seed(seed, ++stream));
        grads.push_back(hw_grad(WishartContext(yw, model), theta));
      }
      double mean = 0.0;
      for (double g : grads) mean += g;
      mean /= static_cast<double>(grads.size());
      double ss = 0.0;
      for (double g : grads) ss += (g - mean) * (g - mean);
      const double se = std::sqrt(ss / static_cast<double>(grads.size() - 1) /
                                  static_cast<double>(grads.size()));
      worst = std::max(worst, std::abs(mean) / se);
    }
  }
  return bounded("score equations unbiased at theta0 (|mean| / SE)", worst, 5.0);
}

}  // namespace

std::vector<CheckResult> run_checks(std::uint64_t seed) {
  return {gaussian_equivalence(seed), precision_inversion(), sensitivity_double_sum(),
          wishart_gradient(seed), pairwise_sigma2(seed), unbiasedness(seed)};
}

}  // namespace tsscore
