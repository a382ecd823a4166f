#include "tsscore/errors.hpp"
#include "tsscore/experiment.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tsscore {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto text = trim(value);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ValidationError("invalid value '" + value + "' for " + key);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  const auto text = trim(value);
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ValidationError("invalid value '" + value + "' for " + key);
  }
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_commas(text)) out.push_back(parse_real("grid", item));
  if (out.empty()) throw ValidationError("grid must contain at least one value");
  return out;
}

std::vector<EstimatorKind> parse_estimators(const std::string& text) {
  std::vector<EstimatorKind> out;
  for (const auto& item : split_commas(text)) out.push_back(parse_estimator_kind(item));
  if (out.empty()) throw ValidationError("at least one estimator is required");
  return out;
}

void apply_config_value(const std::string& key, const std::string& value, ExperimentConfig& cfg) {
  if (key == "model") {
    cfg.model = parse_model_kind(trim(value));
  } else if (key == "grid") {
    cfg.param_grid = parse_grid(value);
  } else if (key == "nu") {
    cfg.nu = parse_number<long long>(key, value);
  } else if (key == "t") {
    cfg.t_len = parse_number<long long>(key, value);
  } else if (key == "replicates") {
    cfg.replicates = parse_number<int>(key, value);
  } else if (key == "mc-b") {
    cfg.mc_b = parse_number<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "estimators") {
    cfg.estimators = parse_estimators(value);
  } else if (key == "out") {
    cfg.out_path = trim(value);
  } else if (key == "svg") {
    cfg.svg_path = trim(value);
  } else if (key == "sd-svg") {
    cfg.sd_svg_path = trim(value);
  } else if (key == "threads") {
    cfg.threads = parse_number<unsigned>(key, value);
  } else {
    throw ValidationError("unknown config key '" + key + "'");
  }
}

void apply_config_text(const std::string& text, ExperimentConfig& cfg) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_config_value(trim(line.substr(0, eq)), line.substr(eq + 1), cfg);
  }
}

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(buf.str(), cfg);
}

}  // namespace tsscore
