#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbldoa {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class SourceMode { random, even };
enum class SweepVariable { snr_db, snapshots, grid_step };

// Flat "key = value" experiment description; '#' starts a comment, keys are
// dotted, unknown keys are errors. Every field has a default, so an empty
// file is a valid single-run config.
struct ExperimentConfig {
  // array.*
  int n1 = 3;
  int n2 = 4;
  double d_over_lambda = 0.5;

  // scenario.*
  int num_sources = 10;
  double angle_min = -60.0;
  double angle_max = 60.0;
  double source_power = 1.0;
  int snapshots = 200;
  double snr_db = 20.0;
  std::uint64_t seed = 1;
  SourceMode source_mode = SourceMode::random;

  // grid.*
  double grid_min = -90.0;
  double grid_max = 90.0;
  double grid_step = 1.0;

  // estimator.*
  double sigma = 0.1;
  double tolerance = 1e-3;
  int max_iters = 1000;
  bool grid_refine = true;
  double fine_step = 0.0;  // 0 selects grid_step / 100

  // sweep.* (present only when sweep.variable was given)
  bool has_sweep = false;
  SweepVariable sweep_variable = SweepVariable::snr_db;
  std::vector<double> sweep_values;
  int sweep_trials = 50;

  // harness.* / output.*
  int threads = 0;  // 0 = runtime default, 1 = serial
  std::string out_dir = "out";
};

// Parses config text; throws ConfigError naming the offending line.
ExperimentConfig parse_config(const std::string& text);

// Convenience: read the file and parse it.
ExperimentConfig load_config(const std::string& path);

}  // namespace sbldoa
