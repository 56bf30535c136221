#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sbldoa/array_model.hpp"
#include "sbldoa/rng.hpp"

namespace sbldoa {

// One synthetic measurement setup: K narrowband far-field sources observed
// over L snapshots at a given SNR.
struct Scenario {
  std::vector<double> source_angles_deg;  // distinct, inside (-90, 90)
  double source_power = 1.0;              // per-source variance
  int snapshots = 200;
  double snr_db = 20.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SnapshotMatrix {
  Eigen::MatrixXcd samples;             // M x L
  std::vector<double> true_angles_deg;  // copy of the scenario angles
};

// Noise variance implied by per-source power and SNR in dB.
double noise_variance(double source_power, double snr_db);

// K random angles in [lo, hi], pairwise separation >= min_gap_deg, sorted.
// Rejection sampling; throws std::invalid_argument when the request cannot fit.
std::vector<double> generate_sources(int k, double lo_deg, double hi_deg, Rng& rng,
                                     double min_gap_deg = 1.0);

// K angles evenly spaced over [lo, hi] inclusive; the interval midpoint for K == 1.
std::vector<double> evenly_spaced_sources(int k, double lo_deg, double hi_deg);

// Noise-free array response: steering matrix at the given angles times the
// K x L source sample block.
Eigen::MatrixXcd propagate(const std::vector<double>& angles_deg,
                           const Eigen::MatrixXcd& source_samples,
                           const ArrayGeometry& geom);

// Y = A(theta) X + N with X ~ CN(0, source_power) i.i.d. and white circular
// noise at the configured SNR. Identical seeds give identical output.
SnapshotMatrix simulate_snapshots(const Scenario& scenario, const ArrayGeometry& geom);

}  // namespace sbldoa
