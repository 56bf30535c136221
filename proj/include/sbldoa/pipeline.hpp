#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sbldoa/estimator.hpp"
#include "sbldoa/peaks.hpp"

namespace sbldoa {

struct EstimationResult {
  std::vector<double> angles_deg;       // refined DOAs, ascending
  std::vector<int> peak_indices;        // grid indices behind the angles
  std::vector<double> grid_deg;         // final grid (refinement may have moved it)
  std::vector<double> spectrum;         // final per-angle power delta
  bool converged = false;
  int iterations = 0;
  bool peak_shortfall = false;
  bool refine_fallback = false;         // any peak kept its grid angle
  std::vector<IterationRecord> trace;
};

// Full estimate: EM solve, peak picking, continuous-angle peak refinement.
// fine_step_deg <= 0 selects the default of one hundredth of the grid step.
EstimationResult estimate_directions(const Eigen::MatrixXcd& snapshots,
                                     const GridDictionary& dict,
                                     const EstimatorConfig& cfg,
                                     double fine_step_deg = 0.0);

}  // namespace sbldoa
