#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sbldoa/harness.hpp"
#include "sbldoa/rng.hpp"

using namespace sbldoa;

namespace {

TrialSettings small_settings() {
  TrialSettings s;
  s.geometry = ArrayGeometry::coprime(3, 4);
  s.num_sources = 3;
  s.angle_min_deg = -50.0;
  s.angle_max_deg = 50.0;
  s.snapshots = 100;
  s.snr_db = 10.0;
  s.grid_min_deg = -90.0;
  s.grid_max_deg = 90.0;
  s.grid_step_deg = 2.0;
  return s;
}

double permutation_best_cost(const std::vector<double>& truth,
                             std::vector<double> estimates) {
  std::sort(estimates.begin(), estimates.end());
  double best = 1e300;
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i)
      cost += std::abs(truth[i] - estimates[i]);
    best = std::min(best, cost);
  } while (std::next_permutation(estimates.begin(), estimates.end()));
  return best;
}

}  // namespace

TEST_CASE("match_estimates frozen example and validation") {
  const auto pairs = match_estimates({0.0, 1.0}, {0.6, 0.4});
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].first == 0.0);
  CHECK(pairs[0].second == 0.4);
  CHECK(pairs[1].first == 1.0);
  CHECK(pairs[1].second == 0.6);
  const double total = std::abs(pairs[0].first - pairs[0].second) +
                       std::abs(pairs[1].first - pairs[1].second);
  CHECK(total == doctest::Approx(0.8));
  // The crossed pairing would cost 1.2.
  CHECK(total < 1.2);

  CHECK_THROWS_AS(match_estimates({0.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("match_estimates rank pairing is optimal for absolute error") {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const int k = 2 + static_cast<int>(rng.uniform(0.0, 4.0));
    std::vector<double> truth(k), est(k);
    for (int i = 0; i < k; ++i) {
      truth[i] = rng.uniform(-60.0, 60.0);
      est[i] = rng.uniform(-60.0, 60.0);
    }
    auto sorted_truth = truth;
    std::sort(sorted_truth.begin(), sorted_truth.end());

    const auto pairs = match_estimates(truth, est);
    double cost = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      CHECK(pairs[i].first == sorted_truth[i]);
      cost += std::abs(pairs[i].first - pairs[i].second);
    }
    CHECK(cost == doctest::Approx(permutation_best_cost(sorted_truth, est)).epsilon(1e-12));
  }
}

TEST_CASE("rmse pools errors across trials") {
  TrialResult a, b;
  a.success = true;
  a.abs_errors_deg = {3.0};
  b.success = true;
  b.abs_errors_deg = {4.0};
  CHECK(rmse({a, b}) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));

  TrialResult failed;
  failed.success = false;
  failed.abs_errors_deg = {100.0};
  CHECK(rmse({a, b, failed}) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));

  CHECK_THROWS_AS(rmse({}), std::invalid_argument);
  CHECK_THROWS_AS(rmse({failed}), std::invalid_argument);
}

TEST_CASE("run_single_trial is reproducible and self-consistent") {
  const TrialSettings s = small_settings();
  const TrialOutput first = run_single_trial(s, 42);
  const TrialOutput second = run_single_trial(s, 42);

  REQUIRE(first.summary.success);
  CHECK(first.summary.true_angles_deg.size() == 3);
  CHECK(first.summary.estimated_angles_deg.size() == 3);
  CHECK(first.summary.abs_errors_deg.size() == 3);
  CHECK(std::is_sorted(first.summary.true_angles_deg.begin(),
                       first.summary.true_angles_deg.end()));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(first.summary.abs_errors_deg[i] ==
          doctest::Approx(std::abs(first.summary.true_angles_deg[i] -
                                   first.summary.estimated_angles_deg[i]))
              .epsilon(1e-12));
  }
  CHECK(first.summary.estimated_angles_deg == second.summary.estimated_angles_deg);
  CHECK(first.summary.iterations == second.summary.iterations);
  CHECK((first.data.samples - second.data.samples).norm() == 0.0);

  const TrialOutput other = run_single_trial(s, 43);
  CHECK((first.data.samples - other.data.samples).norm() != 0.0);
}

TEST_CASE("even sources reproduce the fixed layout") {
  TrialSettings s = small_settings();
  s.even_sources = true;
  s.num_sources = 5;
  const TrialOutput out = run_single_trial(s, 1);
  REQUIRE(out.summary.true_angles_deg.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(out.summary.true_angles_deg[i] ==
          doctest::Approx(-50.0 + i * 25.0).epsilon(1e-12));
  }
}

TEST_CASE("serial and parallel runners agree exactly") {
  const TrialSettings s = small_settings();
  const auto serial = run_trials_serial(s, 100, 6);
  const auto parallel = run_trials(s, 100, 6, 2);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].success == parallel[i].success);
    CHECK(serial[i].iterations == parallel[i].iterations);
    CHECK(serial[i].estimated_angles_deg == parallel[i].estimated_angles_deg);
  }
}

TEST_CASE("peak shortfall is reported as a counted failure") {
  TrialSettings s = small_settings();
  // Two grid points cannot carry two separate peaks.
  s.grid_min_deg = -10.0;
  s.grid_max_deg = 10.0;
  s.grid_step_deg = 11.0;
  s.num_sources = 2;
  s.even_sources = true;
  s.angle_min_deg = -5.0;
  s.angle_max_deg = 5.0;

  const TrialOutput out = run_single_trial(s, 3);
  CHECK_FALSE(out.summary.success);
  CHECK(out.summary.failure == "peak shortfall");

  SweepSpec spec;
  spec.variable = SweepSpec::Variable::snr_db;
  spec.values = {10.0};
  spec.trials = 3;
  spec.base_seed = 3;
  const auto rows = run_sweep(spec, s, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].failures == 3);
  CHECK(std::isnan(rows[0].rmse_deg));
}

TEST_CASE("run_sweep varies the requested variable and seeds trials") {
  TrialSettings s = small_settings();
  s.num_sources = 2;
  s.snapshots = 60;

  SweepSpec spec;
  spec.variable = SweepSpec::Variable::snapshots;
  spec.values = {40.0, 80.0};
  spec.trials = 4;
  spec.base_seed = 11;
  const auto rows = run_sweep(spec, s, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value == 40.0);
  CHECK(rows[1].value == 80.0);
  for (const auto& row : rows) {
    CHECK(row.conv_rate >= 0.0);
    CHECK(row.conv_rate <= 1.0);
    CHECK(row.mean_iters > 0.0);
  }

  // Same spec, same rows (determinism through the parallel runner too).
  const auto again = run_sweep(spec, s, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].rmse_deg == doctest::Approx(again[i].rmse_deg).epsilon(1e-15));
    CHECK(rows[i].failures == again[i].failures);
  }

  SweepSpec bad = spec;
  bad.values = {40.5};
  CHECK_THROWS_AS(run_sweep(bad, s, 1), std::invalid_argument);
}

TEST_CASE("rmse improves from very low to very high snr") {
  TrialSettings s = small_settings();
  s.num_sources = 2;
  s.snapshots = 50;
  s.angle_min_deg = -30.0;
  s.angle_max_deg = 30.0;

  SweepSpec spec;
  spec.variable = SweepSpec::Variable::snr_db;
  spec.values = {-5.0, 30.0};
  spec.trials = 8;
  spec.base_seed = 21;
  const auto rows = run_sweep(spec, s, 0);
  REQUIRE(rows.size() == 2);
  REQUIRE(std::isfinite(rows[1].rmse_deg));
  // Low SNR may fail trials outright; when it yields an RMSE it must be worse.
  if (std::isfinite(rows[0].rmse_deg)) {
    CHECK(rows[1].rmse_deg < rows[0].rmse_deg);
  } else {
    CHECK(rows[0].failures > 0);
  }
  CHECK(rows[1].rmse_deg < 0.5);
}
