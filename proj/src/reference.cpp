#include "sbldoa/reference.hpp"

namespace sbldoa::reference {

namespace {
Eigen::MatrixXcd compose(const Eigen::MatrixXcd& steering,
                         const Eigen::MatrixXcd& derivative,
                         const Eigen::VectorXd& beta) {
  Eigen::MatrixXcd phi = steering;
  for (Eigen::Index j = 0; j < phi.cols(); ++j) phi.col(j) += beta(j) * derivative.col(j);
  return phi;
}
}  // namespace

Posterior posterior_moments(const Eigen::MatrixXcd& snapshots,
                            const Eigen::MatrixXcd& steering,
                            const Eigen::MatrixXcd& derivative,
                            const Eigen::VectorXd& beta,
                            const Eigen::VectorXd& delta, double alpha) {
  const Eigen::Index m = steering.rows();
  const Eigen::MatrixXcd phi = compose(steering, derivative, beta);
  const Eigen::MatrixXcd lambda = delta.cast<std::complex<double>>().asDiagonal();

  Posterior post;
  post.sigma_y = Eigen::MatrixXcd::Identity(m, m) / alpha + phi * lambda * phi.adjoint();
  const Eigen::MatrixXcd inv = post.sigma_y.inverse();
  post.mu = lambda * phi.adjoint() * inv * snapshots;
  post.sigma = lambda - lambda * phi.adjoint() * inv * phi * lambda;
  return post;
}

Eigen::MatrixXcd woodbury_covariance(const Eigen::MatrixXcd& steering,
                                     const Eigen::MatrixXcd& derivative,
                                     const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& delta, double alpha) {
  const Eigen::MatrixXcd phi = compose(steering, derivative, beta);
  Eigen::MatrixXcd precision = phi.adjoint() * phi * alpha;
  precision += delta.cwiseInverse().cast<std::complex<double>>().asDiagonal();
  return precision.inverse();
}

double expected_residual(const Eigen::MatrixXcd& snapshots,
                         const Eigen::MatrixXcd& steering,
                         const Eigen::MatrixXcd& derivative,
                         const Eigen::VectorXd& beta, const Eigen::MatrixXcd& mu,
                         const Eigen::MatrixXcd& sigma) {
  const Eigen::MatrixXcd phi = compose(steering, derivative, beta);
  const Eigen::Index l = snapshots.cols();
  double acc = 0.0;
  for (Eigen::Index t = 0; t < l; ++t)
    acc += (snapshots.col(t) - phi * mu.col(t)).squaredNorm();
  acc /= static_cast<double>(l);
  acc += (phi * sigma * phi.adjoint()).trace().real();
  return acc;
}

NormalEquations offgrid_normal_equations(const Eigen::MatrixXcd& snapshots,
                                         const Eigen::MatrixXcd& steering,
                                         const Eigen::MatrixXcd& derivative,
                                         const Eigen::MatrixXcd& mu,
                                         const Eigen::MatrixXcd& sigma) {
  const Eigen::Index n = steering.cols();
  const Eigen::Index l = snapshots.cols();

  Eigen::MatrixXcd outer = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index t = 0; t < l; ++t) outer += mu.col(t) * mu.col(t).adjoint();
  outer /= static_cast<double>(l);

  const Eigen::MatrixXcd gram = derivative.adjoint() * derivative;

  NormalEquations ne;
  ne.weight = gram.conjugate().cwiseProduct(outer + sigma).real();

  Eigen::VectorXd fit = Eigen::VectorXd::Zero(n);
  for (Eigen::Index t = 0; t < l; ++t) {
    const Eigen::VectorXcd residual = snapshots.col(t) - steering * mu.col(t);
    const Eigen::VectorXcd projected = derivative.adjoint() * residual;
    fit += mu.col(t).conjugate().cwiseProduct(projected).real();
  }
  fit /= static_cast<double>(l);
  const Eigen::MatrixXcd leak = derivative.adjoint() * steering * sigma;
  ne.target = fit - leak.diagonal().real();
  return ne;
}

}  // namespace sbldoa::reference
