#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <vector>

#include "sbldoa/array_model.hpp"

namespace sbldoa {

// Off-grid sparse Bayesian learning with a generalized double Pareto prior.
//
// Model: Y = (A + B diag(beta)) X + noise, with per-angle signal powers delta
// shrunk through a Gaussian / Gamma / Gamma hierarchy (shape parameter sigma).
// An EM loop alternates the Gaussian posterior of X with closed-form updates
// of delta, the per-angle scale eta, the noise precision alpha, and the
// within-cell grid offsets beta; optionally the grid itself is nudged by the
// accepted offsets. Angles are degrees at the interface, beta is radians.

struct EstimatorConfig {
  double sigma = 0.1;          // prior shape; smaller means stronger shrinkage
  int max_iters = 1000;
  double tolerance = 1e-3;     // relative change of delta between iterations
  bool grid_refine = true;
  int num_sources = 1;         // peak count used by grid refinement

  void validate() const;
};

struct SblState {
  GridDictionary dict;      // refinement mutates grid/steering/derivative in place

  Eigen::VectorXd delta;    // N, > 0
  Eigen::VectorXd eta;      // N, > 0
  double alpha = 1.0;       // noise precision, > 0
  Eigen::VectorXd beta;     // N, radians, |beta_n| <= step/2

  // Posterior of the most recent e_step.
  Eigen::MatrixXcd mu;            // N x L
  Eigen::MatrixXcd sigma;         // N x N
  Eigen::MatrixXcd sigma_y;       // M x M, Hermitian positive definite
  Eigen::LLT<Eigen::MatrixXcd> sigma_y_llt;

  // Cached factors shared by the closed-form updates.
  Eigen::MatrixXcd phi;           // A + B diag(beta) at the e_step's beta
  Eigen::MatrixXcd sample_cov;    // Y Y^H / L, fixed per run
  Eigen::MatrixXcd model_cov;     // Phi diag(delta) Phi^H at the e_step's delta
  Eigen::MatrixXcd mu_outer_avg;  // mu mu^H / L
  Eigen::MatrixXcd resp_corr;     // sample_cov * sigma_y^-1 * Phi * diag(delta)
  Eigen::MatrixXcd gram_bb;       // B^H B, kept in sync with the dictionary
  Eigen::MatrixXcd gram_ba;       // B^H A, kept in sync with the dictionary

  bool alpha_floored = false;     // last update_alpha hit its denominator floor
};

struct IterationRecord {
  int iter = 0;
  double delta_change = 0.0;
  double alpha = 0.0;
  int grid_moves = 0;
};

struct SblResult {
  SblState state;
  bool converged = false;
  int iterations = 0;
  std::vector<IterationRecord> trace;
};

// Hyperparameter start: matched-filter powers delta_n = |a_n^H Y|^2 / (L M^2),
// alpha from an assumed -10 dB noise share of the sample power, eta from the
// eta update at the initial delta, beta = 0.
SblState init_state(const Eigen::MatrixXcd& snapshots, const GridDictionary& dict,
                    const EstimatorConfig& cfg);

// Gaussian posterior at the current hyperparameters:
//   sigma_y = alpha^-1 I + Phi diag(delta) Phi^H
//   mu      = diag(delta) Phi^H sigma_y^-1 Y
//   sigma   = diag(delta) - diag(delta) Phi^H sigma_y^-1 Phi diag(delta)
// Uses rank-M identities throughout; never forms an N x N inverse.
void e_step(const Eigen::MatrixXcd& snapshots, SblState& st);

// Closed-form stationary point of the per-angle power objective; floor 1e-12.
Eigen::VectorXd update_delta(const SblState& st, int snapshots);

// eta_n = (-sigma + sqrt(sigma^2 + 2 delta_n (sigma + 2))) / delta_n, computed
// in rationalized form.
Eigen::VectorXd update_eta(const Eigen::VectorXd& delta, double sigma);

// alpha = M L / (||Y - Phi mu||_F^2 + L tr(D - D sigma_y^-1 D)); the denominator
// is floored at 1e-12 and the floor event is reported through st.alpha_floored.
double update_alpha(const Eigen::MatrixXcd& snapshots, SblState& st, int num_snapshots);

// Normal equations of the quadratic offset objective: weight * beta = target.
struct OffgridSystem {
  Eigen::MatrixXd weight;   // N x N, symmetric positive semidefinite
  Eigen::VectorXd target;   // N
};
OffgridSystem offgrid_system(const SblState& st);

// Direct solve when the diagonal spread and the LDLT condition estimate allow
// it, otherwise Gauss-Seidel sweeps; the result is clamped to [-bound, bound].
Eigen::VectorXd solve_offset_system(const OffgridSystem& sys, double bound,
                                    const Eigen::VectorXd& warm_start);

// offgrid_system + solve_offset_system with bound = half the grid step.
Eigen::VectorXd update_beta(const SblState& st);

// Move the given grid points by their accepted offsets. A move is accepted
// when the shifted angle stays within the midpoint interval to its pre-move
// neighbors (half a step beyond the boundary at the grid edges). Accepted
// moves reset beta and rebuild the affected dictionary columns and Gram rows.
// Returns the number of accepted moves.
int refine_grid(SblState& st, const std::vector<int>& peak_indices);

// Full EM loop in the order e_step, delta, eta, alpha, beta, optional grid
// refinement (from the second iteration on). Stops when the relative delta
// change drops below cfg.tolerance or after cfg.max_iters iterations.
SblResult run_offgrid_sbl(const Eigen::MatrixXcd& snapshots, const GridDictionary& dict,
                          const EstimatorConfig& cfg);

}  // namespace sbldoa
