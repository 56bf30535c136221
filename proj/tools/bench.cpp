// Compares the production (chunked, rank-M factored, OpenMP) estimator paths
// against the serial formula-direct reference on a full-size problem, then
// times the serial and parallel Monte Carlo runners on a small sweep.

#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>

#include "sbldoa/estimator.hpp"
#include "sbldoa/harness.hpp"
#include "sbldoa/reference.hpp"
#include "sbldoa/signal_sim.hpp"

using namespace sbldoa;

int main(int argc, char** argv) {
  CLI::App app{"Kernel and harness benchmark"};
  int reps = 20;
  int trials = 8;
  app.add_option("--reps", reps, "Posterior/offset repetitions")->check(CLI::PositiveNumber);
  app.add_option("--trials", trials, "Monte Carlo trials per runner")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const ArrayGeometry geom = ArrayGeometry::coprime(3, 4);
  const GridDictionary dict = build_dictionary(uniform_grid(-90.0, 90.0, 1.0), geom, 1.0);

  Scenario scenario;
  scenario.source_angles_deg = evenly_spaced_sources(10, -60.0, 60.0);
  scenario.snapshots = 200;
  scenario.snr_db = 20.0;
  scenario.seed = 7;
  const SnapshotMatrix data = simulate_snapshots(scenario, geom);

  EstimatorConfig cfg;
  cfg.num_sources = 10;
  SblState st = init_state(data.samples, dict, cfg);

  std::printf("posterior + offset system, M=%d N=%d L=%d, %d reps\n",
              dict.num_sensors(), dict.num_angles(), scenario.snapshots, reps);

  double production = 0.0;
  OffgridSystem sys;
  {
    const double t0 = omp_get_wtime();
    for (int r = 0; r < reps; ++r) {
      e_step(data.samples, st);
      sys = offgrid_system(st);
    }
    production = (omp_get_wtime() - t0) / reps;
  }

  double serial = 0.0;
  reference::Posterior post;
  reference::NormalEquations ne;
  {
    const double t0 = omp_get_wtime();
    for (int r = 0; r < reps; ++r) {
      post = reference::posterior_moments(data.samples, st.dict.steering,
                                          st.dict.derivative, st.beta, st.delta, st.alpha);
      ne = reference::offgrid_normal_equations(data.samples, st.dict.steering,
                                               st.dict.derivative, post.mu, post.sigma);
    }
    serial = (omp_get_wtime() - t0) / reps;
  }

  const double mu_dev = (post.mu - st.mu).norm() / post.mu.norm();
  const double sigma_dev = (post.sigma - st.sigma).norm() / post.sigma.norm();
  const double weight_dev = (ne.weight - sys.weight).norm() / ne.weight.norm();
  const double target_dev = (ne.target - sys.target).norm() / ne.target.norm();

  std::printf("  production (openmp, factored): %8.2f ms/iter\n", production * 1e3);
  std::printf("  reference  (serial, direct):   %8.2f ms/iter\n", serial * 1e3);
  std::printf("  speedup: %.2fx on %d thread(s)\n", serial / production, omp_get_max_threads());
  std::printf("  max relative deviation: mu %.2e  sigma %.2e  weight %.2e  target %.2e\n",
              mu_dev, sigma_dev, weight_dev, target_dev);

  TrialSettings settings;
  settings.geometry = geom;
  settings.num_sources = 3;
  settings.angle_min_deg = -50.0;
  settings.angle_max_deg = 50.0;
  settings.snapshots = 100;
  settings.snr_db = 10.0;
  settings.grid_step_deg = 2.0;
  settings.estimator.num_sources = 3;

  std::printf("harness, %d trials, K=%d L=%d\n", trials, settings.num_sources,
              settings.snapshots);
  const double s0 = omp_get_wtime();
  const auto serial_trials = run_trials_serial(settings, 1, trials);
  const double serial_wall = omp_get_wtime() - s0;
  const double p0 = omp_get_wtime();
  const auto parallel_trials = run_trials(settings, 1, trials);
  const double parallel_wall = omp_get_wtime() - p0;

  bool identical = true;
  for (int i = 0; i < trials; ++i) {
    if (serial_trials[i].estimated_angles_deg != parallel_trials[i].estimated_angles_deg ||
        serial_trials[i].iterations != parallel_trials[i].iterations)
      identical = false;
  }
  std::printf("  serial runner:   %8.2f s\n", serial_wall);
  std::printf("  parallel runner: %8.2f s (%.2fx)\n", parallel_wall,
              serial_wall / parallel_wall);
  std::printf("  per-trial results identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
