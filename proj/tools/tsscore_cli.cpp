// Command-line front end: simulate series, fit one estimator, regenerate the
// efficiency tables, or run the oracle checks.
//
// Exit codes: 0 success, 1 invalid input, 2 runtime failure.

#include "tsscore/checks.hpp"
#include "tsscore/errors.hpp"
#include "tsscore/experiment.hpp"
#include "tsscore/inference.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace tsscore;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

SeriesMatrix read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read data file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ValidationError(path + ":" + std::to_string(line_no) + ": not a number: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("data file '" + path + "' has no rows");
  RowMajorMatrix data(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return SeriesMatrix(std::move(data));
}

std::string series_csv(const SeriesMatrix& y) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < y.nu(); ++i) {
    const auto row = y.row(i);
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (t) out << ',';
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", row[t]);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-score estimation for AR(1) and MA(1) series"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Sample nu series and write them as CSV rows");
  std::string sim_model = "ar1";
  double sim_param = 0.5;
  long long sim_nu = 200;
  long long sim_t = 50;
  std::uint64_t sim_seed = 42;
  std::string sim_out;
  simulate->add_option("--model", sim_model, "ar1 or ma1")->capture_default_str();
  simulate->add_option("--param", sim_param, "phi or alpha")->capture_default_str();
  simulate->add_option("--nu", sim_nu, "number of series")->capture_default_str();
  simulate->add_option("--t", sim_t, "series length")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  simulate->add_option("--out", sim_out, "output path (stdout if omitted)");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit one estimator to a CSV dataset");
  std::string fit_data;
  std::string fit_model = "ar1";
  std::string fit_estimator = "full";
  int fit_mc_b = 500;
  std::uint64_t fit_seed = 42;
  fit_cmd->add_option("--data", fit_data, "CSV file, one series per row")->required();
  fit_cmd->add_option("--model", fit_model, "ar1 or ma1")->capture_default_str();
  fit_cmd->add_option("--estimator", fit_estimator, "full, pairwise, hyv or hyv-wishart")
      ->capture_default_str();
  fit_cmd->add_option("--mc-b", fit_mc_b, "Monte Carlo draws for hyv-wishart")->capture_default_str();
  fit_cmd->add_option("--seed", fit_seed, "Monte Carlo seed")->capture_default_str();

  // table
  auto* table = app.add_subcommand("table", "Replicated simulation study written as CSV");
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> table_flags = {
      {"model", "ar1 or ma1"},
      {"grid", "comma-separated true parameter values"},
      {"nu", "series per replicate"},
      {"t", "series length"},
      {"replicates", "replicates per grid value"},
      {"mc-b", "Monte Carlo draws for the Wishart sd"},
      {"seed", "master seed"},
      {"estimators", "subset of full,pairwise,hyv,hyv-wishart"},
      {"out", "CSV output path"},
      {"svg", "optional ARE chart path"},
      {"sd-svg", "optional sd chart path"},
      {"threads", "worker threads (0 = all cores)"}};
  std::vector<std::string> table_values(table_flags.size());
  std::vector<CLI::Option*> table_opts;
  table->add_option("--config", config_path, "key=value file; flags override it");
  for (std::size_t i = 0; i < table_flags.size(); ++i) {
    table_opts.push_back(
        table->add_option("--" + table_flags[i].first, table_values[i], table_flags[i].second));
  }

  // check
  auto* check = app.add_subcommand("check", "Run the oracle checks and print pass/fail lines");
  std::uint64_t check_seed = 20140512;
  check->add_option("--seed", check_seed, "seed for the simulated checks")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*simulate) {
      const ModelSpec model{parse_model_kind(sim_model), 0.0, 1.0};
      const auto y = sample(model, sim_param, sim_nu, sim_t, sim_seed);
      write_or_print(sim_out, series_csv(y));
      return 0;
    }

    if (*fit_cmd) {
      const ModelSpec model{parse_model_kind(fit_model), 0.0, 1.0};
      const auto kind = parse_estimator_kind(fit_estimator);
      const auto y = read_series_csv(fit_data);
      FitOptions opts;
      opts.mc_draws = fit_mc_b;
      opts.mc_seed = fit_seed;
      const auto mle = fit(y, EstimatorKind::FullML, model, opts);
      if (!mle.boundary_flag) opts.sd_mle = mle.sd;
      const auto rec = kind == EstimatorKind::FullML ? mle : fit(y, kind, model, opts);
      const double rec_are = kind == EstimatorKind::FullML && !mle.boundary_flag ? 1.0 : rec.are;
      std::cout << "estimator,estimate,sd,are,boundary\n"
                << to_string(kind) << ',' << fmt(rec.estimate) << ',' << fmt(rec.sd) << ','
                << fmt(rec_are) << ',' << (rec.boundary_flag ? 1 : 0) << '\n';
      return 0;
    }

    if (*table) {
      ExperimentConfig cfg;
      if (!config_path.empty()) apply_config_file(config_path, cfg);
      for (std::size_t i = 0; i < table_flags.size(); ++i) {
        if (table_opts[i]->count() > 0) apply_config_value(table_flags[i].first, table_values[i], cfg);
      }
      if (cfg.param_grid.empty()) throw ValidationError("--grid is required");
      if (cfg.out_path.empty()) throw ValidationError("--out is required");
      cfg.validate();
      const auto rows = run_experiment(cfg);
      emit_csv(rows, cfg.out_path);
      if (!cfg.svg_path.empty()) emit_are_svg(rows, cfg.svg_path);
      if (!cfg.sd_svg_path.empty()) emit_sd_svg(rows, cfg.sd_svg_path);
      return 0;
    }

    if (*check) {
      bool all = true;
      for (const auto& r : run_checks(check_seed)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
      }
      return all ? 0 : kExitRuntime;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
