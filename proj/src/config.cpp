#include "sbldoa/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sbldoa {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& value, int line) {
  const double parsed = parse_double(value, line);
  if (parsed != std::floor(parsed))
    throw ConfigError(line, "expected an integer, got '" + value + "'");
  return static_cast<int>(parsed);
}

std::uint64_t parse_seed(const std::string& value, int line) {
  std::uint64_t parsed = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError(line, "expected a non-negative integer seed, got '" + value + "'");
  return parsed;
}

bool parse_bool(const std::string& value, int line) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError(line, "expected a boolean, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& value, int line) {
  std::vector<double> values;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(line, "empty entry in list");
    values.push_back(parse_double(item, line));
  }
  if (values.empty()) throw ConfigError(line, "empty list");
  return values;
}

void require(bool ok, int line, const std::string& message) {
  if (!ok) throw ConfigError(line, message);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream stream(text);
  std::string raw;
  int line_no = 0;

  while (std::getline(stream, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");

    if (key == "array.n1") {
      cfg.n1 = parse_int(value, line_no);
      require(cfg.n1 >= 1, line_no, "array.n1 must be >= 1");
    } else if (key == "array.n2") {
      cfg.n2 = parse_int(value, line_no);
      require(cfg.n2 >= 1, line_no, "array.n2 must be >= 1");
    } else if (key == "array.d_over_lambda") {
      cfg.d_over_lambda = parse_double(value, line_no);
      require(cfg.d_over_lambda > 0.0, line_no, "array.d_over_lambda must be positive");
    } else if (key == "scenario.num_sources") {
      cfg.num_sources = parse_int(value, line_no);
      require(cfg.num_sources >= 1, line_no, "scenario.num_sources must be >= 1");
    } else if (key == "scenario.angle_min") {
      cfg.angle_min = parse_double(value, line_no);
    } else if (key == "scenario.angle_max") {
      cfg.angle_max = parse_double(value, line_no);
    } else if (key == "scenario.source_power") {
      cfg.source_power = parse_double(value, line_no);
      require(cfg.source_power > 0.0, line_no, "scenario.source_power must be positive");
    } else if (key == "scenario.snapshots") {
      cfg.snapshots = parse_int(value, line_no);
      require(cfg.snapshots >= 1, line_no, "scenario.snapshots must be >= 1");
    } else if (key == "scenario.snr_db") {
      cfg.snr_db = parse_double(value, line_no);
    } else if (key == "scenario.seed") {
      cfg.seed = parse_seed(value, line_no);
    } else if (key == "scenario.source_mode") {
      if (value == "random") cfg.source_mode = SourceMode::random;
      else if (value == "even") cfg.source_mode = SourceMode::even;
      else throw ConfigError(line_no, "scenario.source_mode must be 'random' or 'even'");
    } else if (key == "grid.min") {
      cfg.grid_min = parse_double(value, line_no);
    } else if (key == "grid.max") {
      cfg.grid_max = parse_double(value, line_no);
    } else if (key == "grid.step") {
      cfg.grid_step = parse_double(value, line_no);
      require(cfg.grid_step > 0.0, line_no, "grid.step must be positive");
    } else if (key == "estimator.sigma") {
      cfg.sigma = parse_double(value, line_no);
      require(cfg.sigma > 0.0, line_no, "estimator.sigma must be positive");
    } else if (key == "estimator.tolerance") {
      cfg.tolerance = parse_double(value, line_no);
      require(cfg.tolerance > 0.0, line_no, "estimator.tolerance must be positive");
    } else if (key == "estimator.max_iters") {
      cfg.max_iters = parse_int(value, line_no);
      require(cfg.max_iters >= 1, line_no, "estimator.max_iters must be >= 1");
    } else if (key == "estimator.grid_refine") {
      cfg.grid_refine = parse_bool(value, line_no);
    } else if (key == "estimator.fine_step") {
      cfg.fine_step = parse_double(value, line_no);
      require(cfg.fine_step >= 0.0, line_no, "estimator.fine_step must be >= 0");
    } else if (key == "sweep.variable") {
      cfg.has_sweep = true;
      if (value == "snr_db") cfg.sweep_variable = SweepVariable::snr_db;
      else if (value == "snapshots") cfg.sweep_variable = SweepVariable::snapshots;
      else if (value == "grid_step") cfg.sweep_variable = SweepVariable::grid_step;
      else throw ConfigError(line_no, "sweep.variable must be snr_db, snapshots, or grid_step");
    } else if (key == "sweep.values") {
      cfg.sweep_values = parse_list(value, line_no);
    } else if (key == "sweep.trials") {
      cfg.sweep_trials = parse_int(value, line_no);
      require(cfg.sweep_trials >= 1, line_no, "sweep.trials must be >= 1");
    } else if (key == "harness.threads") {
      cfg.threads = parse_int(value, line_no);
      require(cfg.threads >= 0, line_no, "harness.threads must be >= 0");
    } else if (key == "output.dir") {
      cfg.out_dir = value;
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  // Cross-field checks; no single line to cite.
  require(cfg.angle_min <= cfg.angle_max, 0,
          "scenario.angle_min must not exceed scenario.angle_max");
  require(cfg.angle_min > -90.0 && cfg.angle_max < 90.0, 0,
          "scenario angles must lie inside (-90, 90)");
  require(cfg.grid_min < cfg.grid_max, 0, "grid.min must be below grid.max");
  require(cfg.grid_step < cfg.grid_max - cfg.grid_min, 0,
          "grid.step must be smaller than the grid range");
  if (cfg.has_sweep) {
    require(!cfg.sweep_values.empty(), 0, "sweep.variable needs sweep.values");
    for (double v : cfg.sweep_values) {
      if (cfg.sweep_variable == SweepVariable::snapshots)
        require(v >= 1.0 && v == std::floor(v), 0,
                "sweep.values for snapshots must be positive integers");
      if (cfg.sweep_variable == SweepVariable::grid_step)
        require(v > 0.0 && v < cfg.grid_max - cfg.grid_min, 0,
                "sweep.values for grid_step must fit the grid range");
    }
  } else {
    require(cfg.sweep_values.empty(), 0, "sweep.values needs sweep.variable");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace sbldoa
