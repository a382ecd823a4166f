#include "tsscore/experiment.hpp"

#include "tsscore/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace tsscore {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ReplicateResult run_one(const ExperimentConfig& cfg, const std::vector<EstimatorKind>& kinds,
                        std::size_t grid_index, int rep) {
  ReplicateResult out;
  out.grid_index = grid_index;
  out.replicate = rep;
  out.fits.resize(kinds.size());
  out.errors.resize(kinds.size());

  const ModelSpec model{cfg.model, 0.0, 1.0};
  const double theta = cfg.param_grid[grid_index];
  const std::uint64_t seed = data_seed(cfg.seed, grid_index, rep);
  SeriesMatrix y;
  try {
    y = sample(model, theta, cfg.nu, cfg.t_len, seed);
  } catch (const std::exception& e) {
    std::fill(out.errors.begin(), out.errors.end(), e.what());
    return out;
  }

  FitOptions opts;
  opts.mc_draws = cfg.mc_b;
  opts.mc_seed = mc_seed(seed);
  // kinds[0] is always FullML; its sd is the ARE baseline for the others.
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    try {
      out.fits[k] = fit(y, kinds[k], model, opts);
      if (k == 0 && !out.fits[0]->boundary_flag) {
        opts.sd_mle = out.fits[0]->sd;
        out.fits[0]->are = 1.0;
      }
    } catch (const std::exception& e) {
      out.errors[k] = e.what();
    }
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (param_grid.empty()) throw ValidationError("grid must contain at least one value");
  for (double v : param_grid) {
    if (!(std::abs(v) < 1.0)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "grid value %g is outside the open interval (-1, 1)", v);
      throw ValidationError(buf);
    }
  }
  if (nu < 2) throw ValidationError("nu must be >= 2");
  if (t_len < 2) throw ValidationError("t must be >= 2");
  if (replicates < 1) throw ValidationError("replicates must be >= 1");
  if (estimators.empty()) throw ValidationError("at least one estimator is required");
  const bool wishart = std::find(estimators.begin(), estimators.end(),
                                 EstimatorKind::HyvarinenWishart) != estimators.end();
  if (wishart && nu < t_len + 2) {
    throw ValidationError("hyv-wishart needs nu >= t + 2 (nu = " + std::to_string(nu) +
                          ", t = " + std::to_string(t_len) + ")");
  }
  if (wishart && mc_b < 50) throw ValidationError("mc-b must be >= 50");
}

std::vector<EstimatorKind> ExperimentConfig::effective_estimators() const {
  std::vector<EstimatorKind> out{EstimatorKind::FullML};
  for (auto kind : kAllEstimators) {
    if (kind == EstimatorKind::FullML) continue;
    if (std::find(estimators.begin(), estimators.end(), kind) != estimators.end()) {
      out.push_back(kind);
    }
  }
  return out;
}

std::uint64_t data_seed(std::uint64_t master, std::size_t grid_index, int rep) {
  return derive_seed(derive_seed(master, grid_index), static_cast<std::uint64_t>(rep));
}

std::uint64_t mc_seed(std::uint64_t data_seed) {
  return derive_seed(data_seed, 0x57495348ULL);
}

std::vector<ReplicateResult> run_replicates(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto kinds = cfg.effective_estimators();
  const std::size_t per_grid = static_cast<std::size_t>(cfg.replicates);
  const std::size_t total = cfg.param_grid.size() * per_grid;
  std::vector<ReplicateResult> results(total);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      results[task] = run_one(cfg, kinds, task / per_grid, static_cast<int>(task % per_grid));
    }
  };
  unsigned n_threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                        : cfg.threads;
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  return results;
}

std::vector<ReportRow> aggregate(const ExperimentConfig& cfg,
                                 const std::vector<ReplicateResult>& results) {
  const auto kinds = cfg.effective_estimators();
  std::vector<ReportRow> rows;
  for (std::size_t g = 0; g < cfg.param_grid.size(); ++g) {
    std::vector<ReportRow> cell_rows;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      ReportRow row;
      row.model = cfg.model;
      row.param_true = cfg.param_grid[g];
      row.estimator = kinds[k];
      row.nu = cfg.nu;
      row.t_len = cfg.t_len;
      row.seed = cfg.seed;
      double sum_est = 0.0;
      double sum_sd = 0.0;
      int failures = 0;
      std::string first_error;
      // Index order keeps the floating-point sums schedule-independent.
      for (const auto& r : results) {
        if (r.grid_index != g) continue;
        const auto& f = r.fits[k];
        if (!f) {
          ++failures;
          if (first_error.empty()) first_error = r.errors[k];
          continue;
        }
        ++row.n_replicates;
        if (f->boundary_flag) {
          ++row.n_boundary;
          continue;
        }
        sum_est += f->estimate;
        sum_sd += f->sd;
      }
      if (failures * 10 > cfg.replicates) {
        throw std::runtime_error(std::string(to_string(kinds[k])) + " failed on " +
                                 std::to_string(failures) + " of " +
                                 std::to_string(cfg.replicates) + " replicates at " +
                                 std::to_string(cfg.param_grid[g]) + ": " + first_error);
      }
      const int used = row.n_replicates - row.n_boundary;
      row.mean_est = used > 0 ? sum_est / used : kNaN;
      row.mean_sd = used > 0 ? sum_sd / used : kNaN;
      cell_rows.push_back(row);
    }
    const double baseline = cell_rows.front().mean_sd;
    for (auto& row : cell_rows) {
      row.are = (baseline > 0.0 && row.mean_sd > 0.0) ? are(baseline, row.mean_sd) : kNaN;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg) {
  return aggregate(cfg, run_replicates(cfg));
}

}  // namespace tsscore
