#pragma once

#include <Eigen/Dense>

namespace sbldoa::reference {

// Serial, formula-direct implementations kept as test oracles and as the
// baseline for the benchmark target. These favor transparency over speed:
// explicit inverses, per-snapshot loops, no shared factorizations.

struct Posterior {
  Eigen::MatrixXcd mu;       // N x L
  Eigen::MatrixXcd sigma;    // N x N
  Eigen::MatrixXcd sigma_y;  // M x M
};

Posterior posterior_moments(const Eigen::MatrixXcd& snapshots,
                            const Eigen::MatrixXcd& steering,
                            const Eigen::MatrixXcd& derivative,
                            const Eigen::VectorXd& beta,
                            const Eigen::VectorXd& delta, double alpha);

// (diag(delta)^-1 + alpha Phi^H Phi)^-1, the N x N route to the posterior
// covariance.
Eigen::MatrixXcd woodbury_covariance(const Eigen::MatrixXcd& steering,
                                     const Eigen::MatrixXcd& derivative,
                                     const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& delta, double alpha);

// Expected squared residual (1/L) sum_t ||y_t - Phi mu_t||^2 + tr(Phi sigma Phi^H)
// as a function of the offsets inside Phi = A + B diag(beta).
double expected_residual(const Eigen::MatrixXcd& snapshots,
                         const Eigen::MatrixXcd& steering,
                         const Eigen::MatrixXcd& derivative,
                         const Eigen::VectorXd& beta, const Eigen::MatrixXcd& mu,
                         const Eigen::MatrixXcd& sigma);

struct NormalEquations {
  Eigen::MatrixXd weight;
  Eigen::VectorXd target;
};

// Offset normal equations assembled from per-snapshot sums.
NormalEquations offgrid_normal_equations(const Eigen::MatrixXcd& snapshots,
                                         const Eigen::MatrixXcd& steering,
                                         const Eigen::MatrixXcd& derivative,
                                         const Eigen::MatrixXcd& mu,
                                         const Eigen::MatrixXcd& sigma);

}  // namespace sbldoa::reference
