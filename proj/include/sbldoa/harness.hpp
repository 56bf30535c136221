#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sbldoa/pipeline.hpp"
#include "sbldoa/signal_sim.hpp"

namespace sbldoa {

// Monte Carlo evaluation: seeded trials, estimate-to-truth matching, RMSE
// aggregation over sweep variables. Trials are independent; the parallel
// runner writes each trial into its own slot, so results are identical to the
// serial runner for any thread count.

// Sorted one-to-one pairing (rank matching), optimal for scalar angles.
// Returns (truth, estimate) pairs ascending by truth.
std::vector<std::pair<double, double>> match_estimates(std::vector<double> truth,
                                                       std::vector<double> estimates);

struct TrialResult {
  std::vector<double> true_angles_deg;
  std::vector<double> estimated_angles_deg;  // paired with true_angles_deg
  std::vector<double> abs_errors_deg;
  bool success = false;
  bool converged = false;
  int iterations = 0;
  double wall_seconds = 0.0;
  std::string failure;  // empty on success
};

// Root mean square of all per-source errors pooled across trials.
double rmse(const std::vector<TrialResult>& trials);

struct TrialSettings {
  ArrayGeometry geometry;
  int num_sources = 1;
  double angle_min_deg = -60.0;
  double angle_max_deg = 60.0;
  bool even_sources = false;  // evenly spaced instead of random draws
  double source_power = 1.0;
  int snapshots = 200;
  double snr_db = 20.0;
  double grid_min_deg = -90.0;
  double grid_max_deg = 90.0;
  double grid_step_deg = 1.0;
  EstimatorConfig estimator;  // num_sources is synced per trial
  double fine_step_deg = 0.0;
};

struct TrialOutput {
  TrialResult summary;
  EstimationResult detail;
  SnapshotMatrix data;
};

// One seeded trial: the seed is expanded into independent source and snapshot
// streams, sources are drawn (or evenly placed), snapshots simulated, the
// estimator run. Estimator exceptions and peak shortfalls become failures.
TrialOutput run_single_trial(const TrialSettings& settings, std::uint64_t seed);
TrialResult run_trial(const TrialSettings& settings, std::uint64_t seed);

// Serial reference runner.
std::vector<TrialResult> run_trials_serial(const TrialSettings& settings,
                                           std::uint64_t base_seed, int count);

// OpenMP runner; threads == 0 keeps the runtime default.
std::vector<TrialResult> run_trials(const TrialSettings& settings,
                                    std::uint64_t base_seed, int count,
                                    int threads = 0);

struct SweepSpec {
  enum class Variable { snr_db, snapshots, grid_step };
  Variable variable = Variable::snr_db;
  std::vector<double> values;
  int trials = 50;
  std::uint64_t base_seed = 1;
};

struct SweepRow {
  double value = 0.0;
  double rmse_deg = 0.0;   // over successful trials; NaN when none succeed
  double conv_rate = 0.0;
  double mean_iters = 0.0;
  int failures = 0;
};

// Fresh sources and noise per trial (seed = base_seed + trial index); failed
// trials are excluded from the RMSE and counted. threads as in run_trials,
// with threads == 1 selecting the serial runner.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const TrialSettings& base,
                                int threads = 0);

}  // namespace sbldoa
