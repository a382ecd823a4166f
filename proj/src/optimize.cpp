#include "tsscore/optimize.hpp"

#include "tsscore/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace tsscore {

namespace {

constexpr int kGridPoints = 64;

void require_finite(double value, double x) {
  if (!std::isfinite(value)) {
    throw OptimizationError("non-finite function value at x = " + std::to_string(x));
  }
}

}  // namespace

double minimize_scalar(const ScalarFunction& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw ValidationError("minimize_scalar: lo must be < hi");
  if (!(tol > 0.0)) throw ValidationError("minimize_scalar: tol must be > 0");

  std::array<double, kGridPoints> xs{};
  const double step = (hi - lo) / (kGridPoints - 1);
  int best = -1;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGridPoints; ++k) {
    xs[k] = (k == kGridPoints - 1) ? hi : lo + step * k;
    const double value = f(xs[k]);
    if (std::isfinite(value) && (best < 0 || value < best_value)) {
      best = k;
      best_value = value;
    }
  }
  if (best < 0) throw OptimizationError("minimize_scalar: objective non-finite on the whole grid");

  const double a = xs[std::max(best - 1, 0)];
  const double b = xs[std::min(best + 1, kGridPoints - 1)];
  // Brent's tolerance is relative: 2^(1 - bits) |x| + 2^(1 - bits) / 4.
  const int max_bits = std::numeric_limits<double>::digits / 2;
  const int bits = std::clamp(static_cast<int>(std::ceil(1.0 - std::log2(tol))), 8, max_bits);
  std::uintmax_t max_iter = 200;
  const auto guarded = [&](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };
  const auto [x_min, f_min] = boost::math::tools::brent_find_minima(guarded, a, b, bits, max_iter);
  // Brent never evaluates the bracket ends; keep the grid point if it is better.
  return f_min <= best_value ? x_min : xs[best];
}

double default_grad_step(double x) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(x));
}

double default_hess_step(double x) {
  return std::sqrt(std::sqrt(std::numeric_limits<double>::epsilon())) * std::max(1.0, std::abs(x));
}

double num_grad(const ScalarFunction& f, double x, double h) {
  if (h <= 0.0) h = default_grad_step(x);
  const double up = f(x + h);
  const double down = f(x - h);
  require_finite(up, x + h);
  require_finite(down, x - h);
  return (up - down) / (2.0 * h);
}

double num_hess(const ScalarFunction& f, double x, double h) {
  if (h <= 0.0) h = default_hess_step(x);
  const double up = f(x + h);
  const double mid = f(x);
  const double down = f(x - h);
  require_finite(up, x + h);
  require_finite(mid, x);
  require_finite(down, x - h);
  return (up - 2.0 * mid + down) / (h * h);
}

}  // namespace tsscore
