#include "sbldoa/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sbldoa/harness.hpp"

namespace sbldoa {

namespace {

std::string format(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

TrialSettings settings_from(const ExperimentConfig& cfg) {
  TrialSettings s;
  s.geometry = ArrayGeometry::coprime(cfg.n1, cfg.n2, cfg.d_over_lambda, 1.0);
  s.num_sources = cfg.num_sources;
  s.angle_min_deg = cfg.angle_min;
  s.angle_max_deg = cfg.angle_max;
  s.even_sources = cfg.source_mode == SourceMode::even;
  s.source_power = cfg.source_power;
  s.snapshots = cfg.snapshots;
  s.snr_db = cfg.snr_db;
  s.grid_min_deg = cfg.grid_min;
  s.grid_max_deg = cfg.grid_max;
  s.grid_step_deg = cfg.grid_step;
  s.estimator.sigma = cfg.sigma;
  s.estimator.tolerance = cfg.tolerance;
  s.estimator.max_iters = cfg.max_iters;
  s.estimator.grid_refine = cfg.grid_refine;
  s.estimator.num_sources = cfg.num_sources;
  s.fine_step_deg = cfg.fine_step;
  return s;
}

void run_single(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const TrialSettings settings = settings_from(cfg);
  const TrialOutput trial = run_single_trial(settings, cfg.seed);
  if (!trial.summary.success && trial.summary.failure != "peak shortfall")
    throw std::runtime_error("trial failed: " + trial.summary.failure);

  const EstimationResult& result = trial.detail;

  std::string spectrum = "angle_deg,power_db,is_peak\n";
  const double top =
      *std::max_element(result.spectrum.begin(), result.spectrum.end());
  for (std::size_t i = 0; i < result.spectrum.size(); ++i) {
    const bool is_peak =
        std::find(result.peak_indices.begin(), result.peak_indices.end(),
                  static_cast<int>(i)) != result.peak_indices.end();
    spectrum += format("%.6f", result.grid_deg[i]) + "," +
                format("%.4f", 10.0 * std::log10(result.spectrum[i] / top)) + "," +
                (is_peak ? "1" : "0") + "\n";
  }
  write_file(out_dir / "spectrum.csv", spectrum);
  std::cout << (out_dir / "spectrum.csv").string() << "\n";

  std::string estimates = "true_deg,estimated_deg,abs_error_deg\n";
  if (trial.summary.success) {
    for (std::size_t i = 0; i < trial.summary.true_angles_deg.size(); ++i) {
      estimates += format("%.6f", trial.summary.true_angles_deg[i]) + "," +
                   format("%.6f", trial.summary.estimated_angles_deg[i]) + "," +
                   format("%.6f", trial.summary.abs_errors_deg[i]) + "\n";
    }
  } else {
    std::cerr << "warning: " << result.angles_deg.size() << " of "
              << settings.num_sources << " sources resolved; estimates.csv lists "
              << "unpaired estimates\n";
    for (double angle : result.angles_deg)
      estimates += "," + format("%.6f", angle) + ",\n";
  }
  write_file(out_dir / "estimates.csv", estimates);
  std::cout << (out_dir / "estimates.csv").string() << "\n";

  std::string trace = "iter,delta_change,alpha,grid_moves\n";
  for (const IterationRecord& rec : result.trace) {
    trace += std::to_string(rec.iter) + "," + format("%.9e", rec.delta_change) + "," +
             format("%.9e", rec.alpha) + "," + std::to_string(rec.grid_moves) + "\n";
  }
  write_file(out_dir / "trace.csv", trace);
  std::cout << (out_dir / "trace.csv").string() << "\n";
}

void run_sweep_mode(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const TrialSettings settings = settings_from(cfg);
  SweepSpec spec;
  switch (cfg.sweep_variable) {
    case SweepVariable::snr_db: spec.variable = SweepSpec::Variable::snr_db; break;
    case SweepVariable::snapshots: spec.variable = SweepSpec::Variable::snapshots; break;
    case SweepVariable::grid_step: spec.variable = SweepSpec::Variable::grid_step; break;
  }
  spec.values = cfg.sweep_values;
  spec.trials = cfg.sweep_trials;
  spec.base_seed = cfg.seed;

  const std::vector<SweepRow> rows = run_sweep(spec, settings, cfg.threads);

  std::string sweep = "sweep_value,rmse_deg,conv_rate,mean_iters,failures\n";
  for (const SweepRow& row : rows) {
    sweep += format("%.6f", row.value) + "," + format("%.6f", row.rmse_deg) + "," +
             format("%.4f", row.conv_rate) + "," + format("%.2f", row.mean_iters) +
             "," + std::to_string(row.failures) + "\n";
  }
  write_file(out_dir / "sweep.csv", sweep);
  std::cout << (out_dir / "sweep.csv").string() << "\n";
}

}  // namespace

int run_command(const std::string& mode, const ExperimentConfig& cfg) {
  if (mode != "single" && mode != "sweep") {
    std::cerr << "error: mode must be 'single' or 'sweep'\n";
    return kExitConfig;
  }
  if (mode == "sweep" && !cfg.has_sweep) {
    std::cerr << "error: sweep mode needs sweep.variable and sweep.values\n";
    return kExitConfig;
  }
  try {
    const std::filesystem::path out_dir(cfg.out_dir);
    std::filesystem::create_directories(out_dir);
    if (mode == "single") run_single(cfg, out_dir);
    else run_sweep_mode(cfg, out_dir);
    return kExitOk;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace sbldoa
