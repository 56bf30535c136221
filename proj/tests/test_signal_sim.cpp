#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbldoa/signal_sim.hpp"

using namespace sbldoa;

TEST_CASE("evenly spaced sources") {
  const auto ten = evenly_spaced_sources(10, -60.0, 60.0);
  REQUIRE(ten.size() == 10);
  for (int i = 0; i < 10; ++i)
    CHECK(ten[i] == doctest::Approx(-60.0 + i * 120.0 / 9.0).epsilon(1e-12));

  const auto single = evenly_spaced_sources(1, 10.0, 30.0);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == doctest::Approx(20.0));
  CHECK(evenly_spaced_sources(1, 0.0, 0.0) == std::vector<double>{0.0});
}

TEST_CASE("random sources honor range and separation") {
  Rng rng(11);
  for (int draw = 0; draw < 1000; ++draw) {
    const auto angles = generate_sources(10, -60.0, 60.0, rng);
    REQUIRE(angles.size() == 10);
    CHECK(std::is_sorted(angles.begin(), angles.end()));
    CHECK(angles.front() >= -60.0);
    CHECK(angles.back() <= 60.0);
    for (int i = 1; i < 10; ++i) CHECK(angles[i] - angles[i - 1] >= 1.0);
  }
}

TEST_CASE("random sources reject infeasible packing") {
  Rng rng(1);
  CHECK_THROWS_AS(generate_sources(200, -60.0, 60.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(generate_sources(0, -60.0, 60.0, rng), std::invalid_argument);
}

TEST_CASE("source draws are seed-deterministic") {
  Rng a(99), b(99);
  CHECK(generate_sources(5, -40.0, 40.0, a) == generate_sources(5, -40.0, 40.0, b));
}

TEST_CASE("noise variance from SNR") {
  CHECK(noise_variance(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(noise_variance(1.0, 20.0) == doctest::Approx(0.01));
  CHECK(noise_variance(2.0, 10.0) == doctest::Approx(0.2));
}

TEST_CASE("propagate: single broadside source passes through") {
  const ArrayGeometry geom = ArrayGeometry::coprime(3, 4);
  Eigen::MatrixXcd x(1, 1);
  x(0, 0) = std::complex<double>(1.0, 0.0);
  const Eigen::MatrixXcd y = propagate({0.0}, x, geom);
  REQUIRE(y.rows() == geom.size());
  for (int m = 0; m < geom.size(); ++m)
    CHECK(std::abs(y(m, 0) - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("snapshots are reproducible per seed") {
  const ArrayGeometry geom = ArrayGeometry::coprime(3, 4);
  Scenario scenario;
  scenario.source_angles_deg = {-10.0, 25.0};
  scenario.snapshots = 16;
  scenario.seed = 1234;
  const SnapshotMatrix a = simulate_snapshots(scenario, geom);
  const SnapshotMatrix b = simulate_snapshots(scenario, geom);
  CHECK((a.samples - b.samples).norm() == 0.0);
  scenario.seed = 1235;
  const SnapshotMatrix c = simulate_snapshots(scenario, geom);
  CHECK((a.samples - c.samples).norm() != 0.0);
}

TEST_CASE("sample covariance approaches the model covariance") {
  const ArrayGeometry geom = ArrayGeometry::coprime(3, 4);
  const int m = geom.size();
  Scenario scenario;
  scenario.source_angles_deg = {0.0};
  scenario.snapshots = 100000;
  scenario.snr_db = 20.0;
  scenario.seed = 5;
  const SnapshotMatrix data = simulate_snapshots(scenario, geom);

  const Eigen::MatrixXcd sample =
      data.samples * data.samples.adjoint() / scenario.snapshots;
  const Eigen::VectorXcd a = steering_vector(0.0, geom);
  const Eigen::MatrixXcd model =
      a * a.adjoint() + 0.01 * Eigen::MatrixXcd::Identity(m, m);
  CHECK((sample - model).norm() / model.norm() < 0.05);
}

TEST_CASE("empirical noise power tracks the configured SNR") {
  Rng rng(7);
  const double variance = noise_variance(1.0, 0.0);
  double acc = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) acc += std::norm(rng.complex_gaussian(variance));
  CHECK(acc / draws == doctest::Approx(variance).epsilon(0.02));
}

TEST_CASE("scenario validation") {
  Scenario scenario;
  scenario.source_angles_deg = {};
  CHECK_THROWS_AS(scenario.validate(), std::invalid_argument);
  scenario.source_angles_deg = {95.0};
  CHECK_THROWS_AS(scenario.validate(), std::invalid_argument);
  scenario.source_angles_deg = {10.0, 10.0};
  CHECK_THROWS_AS(scenario.validate(), std::invalid_argument);
  scenario.source_angles_deg = {10.0};
  scenario.snapshots = 0;
  CHECK_THROWS_AS(scenario.validate(), std::invalid_argument);
}
