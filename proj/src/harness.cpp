#include "sbldoa/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sbldoa {

std::vector<std::pair<double, double>> match_estimates(std::vector<double> truth,
                                                       std::vector<double> estimates) {
  if (truth.size() != estimates.size())
    throw std::invalid_argument("match_estimates: list lengths differ");
  std::sort(truth.begin(), truth.end());
  std::sort(estimates.begin(), estimates.end());
  std::vector<std::pair<double, double>> pairs(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) pairs[i] = {truth[i], estimates[i]};
  return pairs;
}

double rmse(const std::vector<TrialResult>& trials) {
  if (trials.empty()) throw std::invalid_argument("rmse: no trials");
  double sum = 0.0;
  std::size_t count = 0;
  for (const TrialResult& t : trials) {
    if (!t.success) continue;  // failed trials carry no usable pairing
    for (double e : t.abs_errors_deg) {
      sum += e * e;
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("rmse: no successful trial carries errors");
  return std::sqrt(sum / static_cast<double>(count));
}

TrialOutput run_single_trial(const TrialSettings& settings, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  TrialOutput out;
  out.summary.success = false;
  try {
    // Independent sub-streams so re-seeding the simulator cannot replay the
    // uniforms already spent on source placement.
    Rng seeder(seed);
    const std::uint64_t source_seed = seeder.next_seed();
    const std::uint64_t snapshot_seed = seeder.next_seed();

    std::vector<double> angles;
    if (settings.even_sources) {
      angles = evenly_spaced_sources(settings.num_sources, settings.angle_min_deg,
                                     settings.angle_max_deg);
    } else {
      Rng source_rng(source_seed);
      angles = generate_sources(settings.num_sources, settings.angle_min_deg,
                                settings.angle_max_deg, source_rng);
    }

    Scenario scenario;
    scenario.source_angles_deg = angles;
    scenario.source_power = settings.source_power;
    scenario.snapshots = settings.snapshots;
    scenario.snr_db = settings.snr_db;
    scenario.seed = snapshot_seed;
    out.data = simulate_snapshots(scenario, settings.geometry);

    const GridDictionary dict = build_dictionary(
        uniform_grid(settings.grid_min_deg, settings.grid_max_deg, settings.grid_step_deg),
        settings.geometry, settings.grid_step_deg);

    EstimatorConfig cfg = settings.estimator;
    cfg.num_sources = settings.num_sources;
    out.detail = estimate_directions(out.data.samples, dict, cfg, settings.fine_step_deg);

    out.summary.true_angles_deg = angles;
    out.summary.converged = out.detail.converged;
    out.summary.iterations = out.detail.iterations;
    if (out.detail.angles_deg.size() != angles.size()) {
      out.summary.failure = "peak shortfall";
    } else {
      const auto pairs = match_estimates(angles, out.detail.angles_deg);
      out.summary.true_angles_deg.clear();
      for (const auto& [truth, estimate] : pairs) {
        out.summary.true_angles_deg.push_back(truth);
        out.summary.estimated_angles_deg.push_back(estimate);
        out.summary.abs_errors_deg.push_back(std::abs(estimate - truth));
      }
      out.summary.success = true;
    }
  } catch (const std::exception& ex) {
    out.summary.failure = ex.what();
  }
  out.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

TrialResult run_trial(const TrialSettings& settings, std::uint64_t seed) {
  return run_single_trial(settings, seed).summary;
}

std::vector<TrialResult> run_trials_serial(const TrialSettings& settings,
                                           std::uint64_t base_seed, int count) {
  if (count < 1) throw std::invalid_argument("run_trials: count must be >= 1");
  std::vector<TrialResult> results(count);
  for (int i = 0; i < count; ++i)
    results[i] = run_trial(settings, base_seed + static_cast<std::uint64_t>(i));
  return results;
}

std::vector<TrialResult> run_trials(const TrialSettings& settings,
                                    std::uint64_t base_seed, int count, int threads) {
  if (count < 1) throw std::invalid_argument("run_trials: count must be >= 1");
  std::vector<TrialResult> results(count);
  if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < count; ++i)
      results[i] = run_trial(settings, base_seed + static_cast<std::uint64_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i)
      results[i] = run_trial(settings, base_seed + static_cast<std::uint64_t>(i));
  }
  return results;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const TrialSettings& base,
                                int threads) {
  if (spec.values.empty()) throw std::invalid_argument("run_sweep: no sweep values");
  if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");

  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (double value : spec.values) {
    TrialSettings settings = base;
    switch (spec.variable) {
      case SweepSpec::Variable::snr_db:
        settings.snr_db = value;
        break;
      case SweepSpec::Variable::snapshots:
        if (value < 1.0 || value != std::floor(value))
          throw std::invalid_argument("run_sweep: snapshot counts must be positive integers");
        settings.snapshots = static_cast<int>(value);
        break;
      case SweepSpec::Variable::grid_step:
        settings.grid_step_deg = value;
        break;
    }

    const std::vector<TrialResult> trials =
        threads == 1 ? run_trials_serial(settings, spec.base_seed, spec.trials)
                     : run_trials(settings, spec.base_seed, spec.trials, threads);

    SweepRow row;
    row.value = value;
    std::vector<TrialResult> successes;
    double iter_sum = 0.0;
    int converged = 0;
    for (const TrialResult& t : trials) {
      iter_sum += t.iterations;
      if (t.converged) ++converged;
      if (t.success) successes.push_back(t);
      else ++row.failures;
    }
    row.conv_rate = static_cast<double>(converged) / trials.size();
    row.mean_iters = iter_sum / trials.size();
    row.rmse_deg = successes.empty() ? std::numeric_limits<double>::quiet_NaN()
                                     : rmse(successes);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sbldoa
