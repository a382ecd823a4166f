#include "tsscore/wishart_score.hpp"

#include "tsscore/errors.hpp"
#include "tsscore/optimize.hpp"

#include <cmath>
#include <string>

namespace tsscore {

namespace {

void require_dof(Eigen::Index nu, Eigen::Index t_len) {
  if (nu < t_len + 2) {
    throw ValidationError("Wishart score needs nu >= T + 2 (nu = " + std::to_string(nu) +
                          ", T = " + std::to_string(t_len) + ")");
  }
}

SymMatrix invert_sufficient_statistic(const SymMatrix& s) {
  try {
    return s.inverse();
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("sum-of-squares matrix S is singular");
  }
}

}  // namespace

WishartContext::WishartContext(const SeriesMatrix& y, ModelSpec model)
    : WishartContext(sum_of_squares(y), y.nu(), model) {}

WishartContext::WishartContext(const SymMatrix& s, Eigen::Index nu, ModelSpec model)
    : nu_(nu), model_(model) {
  require_dof(nu, s.dim());
  s_inv_ = invert_sufficient_statistic(s);
}

ScoreValue hw_score(const WishartContext& ctx, const SymMatrix& scale_precision) {
  if (scale_precision.dim() != ctx.t_len()) {
    throw ValidationError("hw_score: scale precision dimension mismatch");
  }
  const double c = ctx.half_dof();
  const auto& s_inv = ctx.s_inv().dense();
  const double diag_term = c * s_inv.diagonal().squaredNorm();
  const double fit_term = (c * s_inv - 0.5 * scale_precision.dense()).squaredNorm();
  return -diag_term + 0.5 * fit_term;
}

ScoreValue hw_score(const WishartContext& ctx, double lambda) {
  return hw_score(ctx, precision(ctx.model(), lambda, ctx.t_len()));
}

double hw_grad(const WishartContext& ctx, double lambda, const SymMatrix& dprec) {
  if (dprec.dim() != ctx.t_len()) throw ValidationError("hw_grad: derivative dimension mismatch");
  const double c = ctx.half_dof();
  const SymMatrix prec = precision(ctx.model(), lambda, ctx.t_len());
  const auto residual = c * ctx.s_inv().dense() - 0.5 * prec.dense();
  return -0.5 * residual.cwiseProduct(dprec.dense()).sum();
}

double hw_grad(const WishartContext& ctx, double lambda) {
  return hw_grad(ctx, lambda, precision_derivative(ctx.model(), lambda, ctx.t_len()));
}

SymMatrix precision_derivative(const ModelSpec& model, double theta, Eigen::Index t_len) {
  if (model.kind == ModelKind::Ar1) {
    const auto p = model.ar1(theta);
    p.validate();
    SymMatrix out(t_len);
    const double inv_s2 = 1.0 / p.sigma2;
    if (t_len == 1) {
      out.set(0, 0, -2.0 * p.phi * inv_s2);
      return out;
    }
    for (Eigen::Index i = 0; i < t_len; ++i) {
      const bool corner = (i == 0 || i == t_len - 1);
      out.set(i, i, corner ? 0.0 : 2.0 * p.phi * inv_s2);
      if (i + 1 < t_len) out.set(i, i + 1, -inv_s2);
    }
    return out;
  }
  const double h = 1e-6 * std::max(1.0, std::abs(theta));
  const auto up = ma1_precision(model.ma1(theta + h), t_len);
  const auto down = ma1_precision(model.ma1(theta - h), t_len);
  RowMajorMatrix diff = (up.dense() - down.dense()) / (2.0 * h);
  return SymMatrix::from_dense(std::move(diff));
}

double k_analytic_ar1(double phi, Eigen::Index t_len) {
  if (t_len < 2) throw ValidationError("k_analytic_ar1 requires T >= 2");
  if (!(std::abs(phi) < 1.0)) throw DomainError("k_analytic_ar1 requires |phi| < 1");
  const auto t = static_cast<double>(t_len);
  return (t - 1.0 + 2.0 * phi * phi * (t - 2.0)) / 2.0;
}

double k_from_derivative(const SymMatrix& dprec) {
  return 0.25 * dprec.dense().squaredNorm();
}

WishartEstimate hw_estimate(const SeriesMatrix& y, const ModelSpec& model) {
  require_dof(y.nu(), y.t_len());
  const WishartContext ctx(y, model);
  WishartEstimate out;
  out.lambda = minimize_scalar([&](double lambda) { return hw_score(ctx, lambda); },
                               kParamLower, kParamUpper);
  out.boundary = std::abs(out.lambda) >= kParamUpper - 1e-4;
  return out;
}

}  // namespace tsscore
