#include "tsscore/errors.hpp"
#include "tsscore/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace tsscore {

namespace {

std::string fmt_real(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6g", value);
  return buf.data();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "cannot open '" + path + "' for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "error writing '" + path + "'");
  }
}

// ---------------------------------------------------------------------------
// SVG line chart

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

constexpr std::array<const char*, 4> kColors = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a"};

std::string estimator_label(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::FullML: return "full likelihood";
    case EstimatorKind::PairwiseML: return "pairwise";
    case EstimatorKind::HyvarinenUnivariate: return "Hyvarinen";
    case EstimatorKind::HyvarinenWishart: return "Hyvarinen (Wishart)";
  }
  return "";
}

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       double y_min, double y_max) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
    }
  }
  if (!(x_min < x_max)) {
    x_min -= 0.1;
    x_max += 0.1;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double y) {
    const double c = std::clamp(y, y_min, y_max);
    return kTop + (y_max - c) / (y_max - y_min) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = x_min + (x_max - x_min) * i / 5.0;
    const double y = y_min + (y_max - y_min) * i / 5.0;
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px(x)
        << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(x) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << fmt_real(std::round(x * 1000) / 1000) << "</text>\n"
        << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << kLeft << "\" y2=\""
        << py(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
        << fmt_real(std::round(y * 10000) / 10000) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n"
      << "<text transform=\"translate(18," << kTop + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">" << y_label << "</text>\n"
      << "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % kColors.size()];
    svg << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      if (k) svg << ' ';
      svg << px(s.points[k].first) << ',' << py(s.points[k].second);
    }
    svg << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    const double lx = kLeft + plot_w + 12;
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 22 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<Series> collect(const std::vector<ReportRow>& rows, bool include_mle,
                            double ReportRow::*field) {
  if (rows.empty()) throw ValidationError("cannot plot an empty report");
  for (const auto& r : rows) {
    if (r.model != rows.front().model) throw ValidationError("chart rows must share one model");
  }
  std::map<EstimatorKind, Series> by_kind;
  for (const auto& r : rows) {
    if (!include_mle && r.estimator == EstimatorKind::FullML) continue;
    const double value = r.*field;
    if (!std::isfinite(value)) continue;
    auto& s = by_kind[r.estimator];
    s.label = estimator_label(r.estimator);
    s.points.emplace_back(r.param_true, value);
  }
  std::vector<Series> out;
  for (auto& [kind, s] : by_kind) {
    std::sort(s.points.begin(), s.points.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::string param_name(ModelKind model) { return model == ModelKind::Ar1 ? "phi" : "alpha"; }

}  // namespace

std::string format_csv(std::vector<ReportRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.model != b.model) return a.model < b.model;
    if (a.param_true != b.param_true) return a.param_true < b.param_true;
    return a.estimator < b.estimator;
  });
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.model) << ',' << fmt_real(r.param_true) << ',' << to_string(r.estimator)
        << ',' << fmt_real(r.mean_est) << ',' << fmt_real(r.mean_sd) << ',' << fmt_real(r.are)
        << ',' << r.n_replicates << ',' << r.n_boundary << ',' << r.nu << ',' << r.t_len << ','
        << r.seed << '\n';
  }
  return out.str();
}

void emit_csv(const std::vector<ReportRow>& rows, const std::string& path) {
  write_file(path, format_csv(rows));
}

std::string format_are_svg(const std::vector<ReportRow>& rows) {
  const auto series = collect(rows, false, &ReportRow::are);
  const std::string model(to_string(rows.front().model));
  return line_chart("Asymptotic relative efficiency, " + model, param_name(rows.front().model),
                    "ARE", series, 0.0, 1.1);
}

void emit_are_svg(const std::vector<ReportRow>& rows, const std::string& path) {
  write_file(path, format_are_svg(rows));
}

std::string format_sd_svg(const std::vector<ReportRow>& rows) {
  const auto series = collect(rows, true, &ReportRow::mean_sd);
  double y_max = 0.0;
  for (const auto& s : series) {
    for (const auto& p : s.points) y_max = std::max(y_max, p.second);
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  const std::string model(to_string(rows.front().model));
  return line_chart("Asymptotic standard deviation, " + model, param_name(rows.front().model),
                    "sd", series, 0.0, 1.1 * y_max);
}

void emit_sd_svg(const std::vector<ReportRow>& rows, const std::string& path) {
  write_file(path, format_sd_svg(rows));
}

}  // namespace tsscore
