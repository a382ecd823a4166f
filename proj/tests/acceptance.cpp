// Acceptance gate. Prints one PASS/FAIL line per criterion, preceded by the
// individual comparisons behind it, and exits non-zero if any criterion fails.
//
// Usage: acceptance <path to tsscore binary>

#include "tsscore/experiment.hpp"
#include "tsscore/optimize.hpp"
#include "tsscore/scoring_rules.hpp"
#include "tsscore/wishart_score.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace tsscore;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(const std::string& what, double observed, double target, double tol) {
    const bool ok = std::abs(observed - target) <= tol;
    record(ok, what, observed, "target " + num(target) + " +- " + num(tol));
  }
  void at_least(const std::string& what, double observed, double bound) {
    record(observed >= bound, what, observed, ">= " + num(bound));
  }
  void at_most(const std::string& what, double observed, double bound) {
    record(observed <= bound, what, observed, "<= " + num(bound));
  }
  void require(const std::string& what, bool ok) {
    passed_ = passed_ && ok;
    std::printf("    %s %s\n", ok ? "ok  " : "MISS", what.c_str());
  }

  bool finish() const {
    std::printf("%s %s\n", passed_ ? "PASS" : "FAIL", name_.c_str());
    std::fflush(stdout);
    return passed_;
  }

 private:
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
  }
  void record(bool ok, const std::string& what, double observed, const std::string& rule) {
    passed_ = passed_ && ok;
    std::printf("    %s %s: %.5g (%s)\n", ok ? "ok  " : "MISS", what.c_str(), observed, rule.c_str());
  }

  std::string name_;
  bool passed_ = true;
};

const ReportRow& find_row(const std::vector<ReportRow>& rows, double param, EstimatorKind kind) {
  for (const auto& r : rows) {
    if (r.param_true == param && r.estimator == kind) return r;
  }
  throw std::runtime_error("missing report row");
}

std::string label(const char* what, double param) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s at %+.1f", what, param);
  return buf;
}

std::vector<ReportRow> run_table(ModelKind model, std::vector<double> grid, double* elapsed) {
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.param_grid = std::move(grid);
  cfg.nu = 200;
  cfg.t_len = 50;
  cfg.replicates = 200;
  cfg.mc_b = 500;
  cfg.seed = 42;
  const auto start = Clock::now();
  auto rows = run_experiment(cfg);
  *elapsed = seconds_since(start);
  return rows;
}

// 1 -------------------------------------------------------------------------------------

bool criterion_ar_table(const std::vector<ReportRow>& rows, double elapsed) {
  Criterion c("1 AR(1) spot rows: means, ARE(pairwise/hyv/hyv-wishart), runtime");
  const double phis[] = {-0.9, -0.5, 0.0, 0.5, 0.9};
  const double pair[] = {0.8625, 0.8069, 0.9998, 0.8071, 0.8622};
  const double hyv[] = {0.0738, 0.5060, 1.0077, 0.5077, 0.0734};
  const double wish[] = {0.0278, 0.1853, 0.7401, 0.1867, 0.0278};
  for (int i = 0; i < 5; ++i) {
    for (auto kind : kAllEstimators) {
      const auto& r = find_row(rows, phis[i], kind);
      c.expect(label(("mean " + std::string(to_string(kind))).c_str(), phis[i]), r.mean_est, phis[i], 0.01);
    }
    c.expect(label("ARE pairwise", phis[i]), find_row(rows, phis[i], EstimatorKind::PairwiseML).are, pair[i], 0.05);
    c.expect(label("ARE hyv", phis[i]), find_row(rows, phis[i], EstimatorKind::HyvarinenUnivariate).are, hyv[i], 0.08);
    c.expect(label("ARE hyv-wishart", phis[i]), find_row(rows, phis[i], EstimatorKind::HyvarinenWishart).are, wish[i], 0.03);
  }
  c.at_most("runtime of the five AR(1) grid points, seconds", elapsed, 600.0);
  return c.finish();
}

// 2 -------------------------------------------------------------------------------------

bool criterion_ma_table(const std::vector<ReportRow>& rows) {
  Criterion c("2 MA(1) spot rows: ARE(pairwise/hyv/hyv-wishart), sd(MLE) at 0");
  const double alphas[] = {-0.9, 0.0, 0.9};
  const double pair[] = {0.1064, 1.0082, 0.1072};
  const double hyv[] = {0.7208, 1.0101, 0.7300};
  const double wish[] = {0.5471, 0.7429, 0.5504};
  for (int i = 0; i < 3; ++i) {
    c.expect(label("ARE pairwise", alphas[i]), find_row(rows, alphas[i], EstimatorKind::PairwiseML).are, pair[i], 0.04);
    c.expect(label("ARE hyv", alphas[i]), find_row(rows, alphas[i], EstimatorKind::HyvarinenUnivariate).are, hyv[i], 0.08);
    c.expect(label("ARE hyv-wishart", alphas[i]), find_row(rows, alphas[i], EstimatorKind::HyvarinenWishart).are, wish[i], 0.08);
  }
  c.expect("sd full at +0.0", find_row(rows, 0.0, EstimatorKind::FullML).mean_sd, 0.0101, 0.0005);
  return c.finish();
}

// 3 -------------------------------------------------------------------------------------

bool criterion_crossover(const std::vector<ReportRow>& ar, const std::vector<ReportRow>& ma) {
  Criterion c("3 crossover: pairwise wins for AR(1), Hyvarinen wins for MA(1)");
  const double ar_gap = find_row(ar, 0.9, EstimatorKind::PairwiseML).are -
                        find_row(ar, 0.9, EstimatorKind::HyvarinenUnivariate).are;
  const double ma_gap = find_row(ma, 0.9, EstimatorKind::HyvarinenUnivariate).are -
                        find_row(ma, 0.9, EstimatorKind::PairwiseML).are;
  c.at_least("AR(1) phi=0.9: ARE pairwise - ARE hyv", ar_gap, 0.5);
  c.at_least("MA(1) alpha=0.9: ARE hyv - ARE pairwise", ma_gap, 0.4);
  return c.finish();
}

// 4 -------------------------------------------------------------------------------------

// Hyvarinen score from its definition: finite-difference Laplacian and
// gradient of the dense Gaussian log density.
double fd_hyvarinen(std::span<const double> y, const Eigen::MatrixXd& prec, double mu) {
  const Eigen::Index t = prec.rows();
  Eigen::VectorXd r(t);
  for (Eigen::Index i = 0; i < t; ++i) r(i) = y[static_cast<std::size_t>(i)] - mu;
  const auto log_q = [&](const Eigen::VectorXd& v) { return -0.5 * v.dot(prec * v); };
  const double h = 1e-3;
  double total = 0.0;
  for (Eigen::Index i = 0; i < t; ++i) {
    Eigen::VectorXd up = r, dn = r;
    up(i) += h;
    dn(i) -= h;
    const double fu = log_q(up), fd = log_q(dn), f0 = log_q(r);
    const double grad = (fu - fd) / (2 * h);
    total += (fu - 2 * f0 + fd) / (h * h) + 0.5 * grad * grad;
  }
  return total;
}

bool criterion_oracles() {
  Criterion c("4 oracle equivalences (closed forms vs generic computations)");
  const auto start = Clock::now();
  const double grid[] = {-0.9, -0.5, 0.0, 0.5, 0.9};

  double hyv_err = 0.0;
  double hyv_fd_err = 0.0;
  double prec_err = 0.0;
  for (auto kind : {ModelKind::Ar1, ModelKind::Ma1}) {
    const ModelSpec model{kind, 0.2, 1.4};
    for (Eigen::Index t = 1; t <= 20; ++t) {
      for (double theta : grid) {
        const Eigen::MatrixXd dense_prec = covariance(model, theta, t).dense().inverse();
        prec_err = std::max(prec_err, (precision(model, theta, t).dense() - dense_prec).cwiseAbs().maxCoeff());
        if (t < 2) continue;
        const auto y = sample(model, theta, 2, t, derive_seed(4, static_cast<std::uint64_t>(t)));
        for (Eigen::Index i = 0; i < y.nu(); ++i) {
          const double closed = kind == ModelKind::Ar1 ? ar1_hyvarinen(y.row(i), model.ar1(theta))
                                                       : ma1_hyvarinen(y.row(i), model.ma1(theta));
          const auto p = SymMatrix::from_dense(RowMajorMatrix(0.5 * (dense_prec + dense_prec.transpose())));
          hyv_err = std::max(hyv_err, std::abs(closed - gaussian_hyvarinen(y.row(i), p, model.mu)));
          hyv_fd_err = std::max(hyv_fd_err, std::abs(closed - fd_hyvarinen(y.row(i), dense_prec, model.mu)) /
                                                std::max(1.0, std::abs(closed)));
        }
      }
    }
  }
  c.at_most("closed-form Hyvarinen vs generic Gaussian form, max abs error", hyv_err, 1e-8);
  c.at_most("closed-form Hyvarinen vs finite-difference definition, max rel error", hyv_fd_err, 1e-4);
  c.at_most("analytic precision vs dense inverse, max abs error", prec_err, 1e-10);

  // Entries of the AR(1) precision are quadratic in phi, so a wide central
  // difference recovers the derivative up to rounding.
  double k_err = 0.0;
  for (Eigen::Index t = 2; t <= 50; ++t) {
    for (double phi : grid) {
      const double h = 1e-2;
      const Eigen::MatrixXd d =
          (ar1_precision({0, 1, phi + h}, t).dense() - ar1_precision({0, 1, phi - h}, t).dense()) / (2 * h);
      double sum = 0.0;
      for (Eigen::Index i = 0; i < t; ++i) {
        for (Eigen::Index j = 0; j < t; ++j) sum += d(j, i) * d(j, i);
      }
      k_err = std::max(k_err, std::abs(k_analytic_ar1(phi, t) - 0.25 * sum));
    }
  }
  c.at_most("k_analytic_ar1 vs brute-force double sum, max abs error", k_err, 1e-10);

  double grad_err = 0.0;
  for (auto kind : {ModelKind::Ar1, ModelKind::Ma1}) {
    const ModelSpec model{kind, 0.0, 1.0};
    for (Eigen::Index t : {3, 5, 10, 20}) {
      const auto y = sample(model, 0.4, 3 * t, t, derive_seed(8, static_cast<std::uint64_t>(t)));
      const WishartContext ctx(y, model);
      for (double theta : {-0.8, -0.5, 0.0, 0.5, 0.8}) {
        const double h = 1e-5;
        const double fd = (hw_score(ctx, theta + h) - hw_score(ctx, theta - h)) / (2 * h);
        grad_err = std::max(grad_err, std::abs(hw_grad(ctx, theta) - fd) / std::max(1.0, std::abs(fd)));
      }
    }
  }
  c.at_most("hw_grad vs finite differences, max rel error", grad_err, 1e-4);

  const auto y = sample_ar1({0, 1, 0.5}, 2000, 50, 20140512);
  c.expect("pairwise sigma2 at nu=2000", ar1_pairwise_closed_form(y).sigma2, 1.0, 0.02);

  c.at_most("elapsed seconds", seconds_since(start), 30.0);
  return c.finish();
}

// 5 -------------------------------------------------------------------------------------

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_se(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
}

bool criterion_unbiasedness() {
  Criterion c("5 estimating equations unbiased at theta0 (|mean gradient| <= 5 MC SE)");
  std::uint64_t stream = 0;
  for (auto model_kind : {ModelKind::Ar1, ModelKind::Ma1}) {
    const ModelSpec model{model_kind, 0.0, 1.0};
    for (double theta : {-0.5, 0.0, 0.5}) {
      const auto y = sample(model, theta, 2000, 50, derive_seed(505, ++stream));
      for (auto kind : {EstimatorKind::FullML, EstimatorKind::PairwiseML, EstimatorKind::HyvarinenUnivariate}) {
        std::vector<double> grads;
        for (Eigen::Index i = 0; i < y.nu(); ++i) {
          grads.push_back(num_grad([&](double th) { return series_score(y.row(i), kind, model, th); }, theta));
        }
        const auto m = mean_se(grads);
        c.at_most(std::string(to_string(model_kind)) + " " + std::string(to_string(kind)) + " " +
                      label("|mean|/SE", theta),
                  std::abs(m.mean) / m.se, 5.0);
      }
      std::vector<double> grads;
      for (int b = 0; b < 1000; ++b) {
        const auto yw = sample(model, theta, 200, 50, derive_seed(606, ++stream));
        grads.push_back(hw_grad(WishartContext(yw, model), theta));
      }
      const auto m = mean_se(grads);
      c.at_most(std::string(to_string(model_kind)) + " hyv-wishart " + label("|mean|/SE", theta),
                std::abs(m.mean) / m.se, 5.0);
    }
  }
  return c.finish();
}

// 6 -------------------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool criterion_determinism(const std::string& cli) {
  Criterion c("6 table CSV byte-identical across runs and thread counts");
  const auto dir = std::filesystem::temp_directory_path() / "tsscore_acceptance";
  std::filesystem::create_directories(dir);
  const unsigned n = std::max(2u, std::thread::hardware_concurrency());
  std::vector<std::string> outputs;
  for (unsigned threads : {1u, 1u, n, n}) {
    const auto out = dir / ("run" + std::to_string(outputs.size()) + ".csv");
    const std::string cmd = "\"" + cli + "\" table --model ma1 --grid -0.5,0.5 --replicates 8 --mc-b 50 --seed 7 "
                            "--threads " + std::to_string(threads) + " --out \"" + out.string() + "\"";
    const int rc = std::system(cmd.c_str());
    c.require("exit status 0 with " + std::to_string(threads) + " thread(s)", rc == 0);
    outputs.push_back(slurp(out));
  }
  c.require("CSV is non-empty", outputs[0].size() > std::string(kCsvHeader).size());
  c.require("1 thread, run twice: identical bytes", outputs[0] == outputs[1]);
  c.require(std::to_string(n) + " threads, run twice: identical bytes", outputs[2] == outputs[3]);
  c.require("1 vs " + std::to_string(n) + " threads: identical bytes", outputs[0] == outputs[2]);
  std::filesystem::remove_all(dir);
  return c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to tsscore binary>\n";
    return 2;
  }
  bool all = true;
  all = criterion_oracles() && all;
  all = criterion_unbiasedness() && all;
  all = criterion_determinism(argv[1]) && all;

  double ar_seconds = 0.0;
  double ma_seconds = 0.0;
  const auto ar = run_table(ModelKind::Ar1, {-0.9, -0.5, 0.0, 0.5, 0.9}, &ar_seconds);
  const auto ma = run_table(ModelKind::Ma1, {-0.9, 0.0, 0.9}, &ma_seconds);
  std::cout << "\n" << format_csv(ar) << format_csv(ma) << "\n";
  std::printf("AR(1) table %.1f s, MA(1) table %.1f s\n", ar_seconds, ma_seconds);
  all = criterion_ar_table(ar, ar_seconds) && all;
  all = criterion_ma_table(ma) && all;
  all = criterion_crossover(ar, ma) && all;
  return all ? 0 : 1;
}
