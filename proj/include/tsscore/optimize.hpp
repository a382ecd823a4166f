#pragma once

#include <functional>

namespace tsscore {

using ScalarFunction = std::function<double(double)>;

/// Open interval searched for phi and alpha; every objective diverges at +-1.
inline constexpr double kParamLower = -0.999;
inline constexpr double kParamUpper = 0.999;
inline constexpr double kParamTol = 1e-6;

/// Local minimizer of f on [lo, hi]: f is evaluated on a 64-point grid, then
/// Brent's method refines inside the two cells around the best grid point.
/// For unimodal f the result is within tol of the argmin. Non-finite grid
/// values are skipped; throws OptimizationError if every one is non-finite.
double minimize_scalar(const ScalarFunction& f, double lo, double hi, double tol = kParamTol);

/// Central-difference first derivative. h <= 0 selects
/// cbrt(eps) * max(1, |x|).
double num_grad(const ScalarFunction& f, double x, double h = 0.0);

/// Central-difference second derivative. h <= 0 selects
/// eps^(1/4) * max(1, |x|).
double num_hess(const ScalarFunction& f, double x, double h = 0.0);

double default_grad_step(double x);
double default_hess_step(double x);

}  // namespace tsscore
