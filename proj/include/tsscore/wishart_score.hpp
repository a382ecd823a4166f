#pragma once

#include "tsscore/linear_models.hpp"
#include "tsscore/scoring_rules.hpp"

namespace tsscore {

/// Sufficient statistic S = Y^T Y of nu independent rows, with S^{-1}
/// factored once. Requires nu >= T + 2 so that nu - T - 1 >= 1.
class WishartContext {
 public:
  WishartContext(const SeriesMatrix& y, ModelSpec model);
  WishartContext(const SymMatrix& s, Eigen::Index nu, ModelSpec model);

  Eigen::Index nu() const { return nu_; }
  Eigen::Index t_len() const { return s_inv_.dim(); }
  const SymMatrix& s_inv() const { return s_inv_; }
  const ModelSpec& model() const { return model_; }
  /// (nu - T - 1) / 2
  double half_dof() const { return 0.5 * static_cast<double>(nu_ - t_len() - 1); }

 private:
  Eigen::Index nu_;
  SymMatrix s_inv_;
  ModelSpec model_;
};

/// Hyvarinen score of the Wishart density of S at an arbitrary scale
/// precision Lambda^{-1}:
///   -c sum_i (s^{ii})^2 + 1/2 sum_{i,j} (c s^{ji} - lambda^{ji} / 2)^2
/// with c = (nu - T - 1) / 2. The double sum runs over every ordered pair.
ScoreValue hw_score(const WishartContext& ctx, const SymMatrix& scale_precision);

/// hw_score with Lambda^{-1} = precision(model, lambda) at the context's
/// known level and variance.
ScoreValue hw_score(const WishartContext& ctx, double lambda);

/// d/d lambda of hw_score given the elementwise derivative of Lambda^{-1}:
///   -1/2 sum_{i,j} (c s^{ji} - lambda^{ji} / 2) d lambda^{ji}
double hw_grad(const WishartContext& ctx, double lambda, const SymMatrix& dprec);
/// Same, with dprec from precision_derivative().
double hw_grad(const WishartContext& ctx, double lambda);

/// Elementwise d/d theta of the model precision matrix. Analytic for AR(1);
/// central difference with step 1e-6 max(1, |alpha|) for MA(1).
SymMatrix precision_derivative(const ModelSpec& model, double theta, Eigen::Index t_len);

/// Sensitivity of the Wishart score for AR(1) with unit innovation variance:
/// (T - 1 + 2 phi^2 (T - 2)) / 2.  Requires T >= 2.
double k_analytic_ar1(double phi, Eigen::Index t_len);

/// 1/4 sum_{i,j} (d lambda^{ji})^2, the expected second derivative of hw_score.
double k_from_derivative(const SymMatrix& dprec);

struct WishartEstimate {
  double lambda = 0.0;
  bool boundary = false;
};

/// Minimizes hw_score over the open parameter interval. Throws
/// ValidationError if nu < T + 2.
WishartEstimate hw_estimate(const SeriesMatrix& y, const ModelSpec& model);

}  // namespace tsscore
