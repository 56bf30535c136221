#include "sbldoa/signal_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbldoa {

void Scenario::validate() const {
  if (source_angles_deg.empty()) throw std::invalid_argument("scenario: needs at least one source");
  for (double a : source_angles_deg) {
    if (!(a > -90.0 && a < 90.0))
      throw std::invalid_argument("scenario: source angles must lie inside (-90, 90)");
  }
  std::vector<double> sorted = source_angles_deg;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("scenario: source angles must be distinct");
  if (snapshots < 1) throw std::invalid_argument("scenario: snapshots must be >= 1");
  if (!(source_power > 0.0)) throw std::invalid_argument("scenario: source power must be positive");
}

double noise_variance(double source_power, double snr_db) {
  return source_power * std::pow(10.0, -snr_db / 10.0);
}

std::vector<double> generate_sources(int k, double lo_deg, double hi_deg, Rng& rng,
                                     double min_gap_deg) {
  if (k < 1) throw std::invalid_argument("generate_sources: k must be >= 1");
  if (lo_deg > hi_deg) throw std::invalid_argument("generate_sources: empty range");
  if ((k - 1) * min_gap_deg > hi_deg - lo_deg)
    throw std::invalid_argument("generate_sources: range cannot hold k sources at the required separation");

  // Rejection over whole draws; feasibility above guarantees termination,
  // though tight ranges may take many attempts.
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<double> draw(k);
    for (int i = 0; i < k; ++i) draw[i] = rng.uniform(lo_deg, hi_deg);
    std::sort(draw.begin(), draw.end());
    bool ok = true;
    for (int i = 1; i < k; ++i) {
      if (draw[i] - draw[i - 1] < min_gap_deg) {
        ok = false;
        break;
      }
    }
    if (ok) return draw;
  }
  throw std::runtime_error("generate_sources: rejection sampling did not terminate");
}

std::vector<double> evenly_spaced_sources(int k, double lo_deg, double hi_deg) {
  if (k < 1) throw std::invalid_argument("evenly_spaced_sources: k must be >= 1");
  if (lo_deg > hi_deg) throw std::invalid_argument("evenly_spaced_sources: empty range");
  if (k == 1) return {0.5 * (lo_deg + hi_deg)};
  std::vector<double> angles(k);
  const double step = (hi_deg - lo_deg) / (k - 1);
  for (int i = 0; i < k; ++i) angles[i] = lo_deg + i * step;
  return angles;
}

Eigen::MatrixXcd propagate(const std::vector<double>& angles_deg,
                           const Eigen::MatrixXcd& source_samples,
                           const ArrayGeometry& geom) {
  if (static_cast<Eigen::Index>(angles_deg.size()) != source_samples.rows())
    throw std::invalid_argument("propagate: angle count must match source rows");
  Eigen::MatrixXcd steering(geom.size(), angles_deg.size());
  for (std::size_t j = 0; j < angles_deg.size(); ++j)
    steering.col(j) = steering_vector(angles_deg[j], geom);
  return steering * source_samples;
}

SnapshotMatrix simulate_snapshots(const Scenario& scenario, const ArrayGeometry& geom) {
  scenario.validate();
  geom.validate();
  const int k = static_cast<int>(scenario.source_angles_deg.size());
  const int m = geom.size();
  const int l = scenario.snapshots;

  Rng rng(scenario.seed);
  Eigen::MatrixXcd sources(k, l);
  for (int t = 0; t < l; ++t)
    for (int i = 0; i < k; ++i) sources(i, t) = rng.complex_gaussian(scenario.source_power);

  SnapshotMatrix out;
  out.samples = propagate(scenario.source_angles_deg, sources, geom);
  const double var = noise_variance(scenario.source_power, scenario.snr_db);
  for (int t = 0; t < l; ++t)
    for (int i = 0; i < m; ++i) out.samples(i, t) += rng.complex_gaussian(var);
  out.true_angles_deg = scenario.source_angles_deg;
  return out;
}

}  // namespace sbldoa
