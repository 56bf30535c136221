#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sbldoa/estimator.hpp"

namespace sbldoa {

// A local maximum of the power spectrum together with its flanking grid
// points; power at the index dominates both existing neighbors.
struct PeakCluster {
  int index = 0;
  double theta_deg = 0.0;
  double power = 0.0;
  bool has_left = false;
  double left_theta_deg = 0.0;
  double left_power = 0.0;
  bool has_right = false;
  double right_theta_deg = 0.0;
  double right_power = 0.0;
};

struct PeakSearch {
  std::vector<PeakCluster> peaks;  // sorted by angle
  bool shortfall = false;          // fewer local maxima than requested
};

// Top-k local maxima of power over the grid (one-sided test at the edges,
// ties broken toward the lower index), returned in angle order.
PeakSearch find_peaks(const Eigen::VectorXd& power, const std::vector<double>& grid_deg,
                      int k);

// Scan interval for a peak: toward the stronger flank, bounded by the
// neighboring grid angles; at an edge only the interior side remains.
void scan_interval(const PeakCluster& peak, double* lo_deg, double* hi_deg);

// Stationary candidate power for a steered direction with whitened gain u,
// data energy v, scale eta, over num_snapshots snapshots; clamped at zero.
double refined_power(double u, double v, double eta, int num_snapshots);

// Marginal log-likelihood gain of placing one component with power
// refined_power(u, v, eta, L) in that direction.
double refinement_objective(double u, double v, double eta, int num_snapshots);

// Continuous-angle polish of one converged peak: remove the peak's own
// contribution from sigma_y once, then scan candidate angles at fine_step_deg
// and return the angle with the best single-component likelihood gain. Falls
// back to the grid angle when the deflated covariance is not positive
// definite (reported through *fallback).
double refine_peak(const PeakCluster& peak, const Eigen::MatrixXcd& snapshots,
                   const SblState& st, double fine_step_deg, bool* fallback = nullptr);

}  // namespace sbldoa
