#include "sbldoa/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "sbldoa/kernels.hpp"
#include "sbldoa/peaks.hpp"

namespace sbldoa {

namespace {
constexpr double kPowerFloor = 1e-12;
constexpr double kDenominatorFloor = 1e-12;
constexpr double kDirectSolveCondition = 1e8;
constexpr int kMaxSweeps = 100;
constexpr double kSweepTolerance = 1e-6;
}  // namespace

void EstimatorConfig::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("estimator: sigma must be positive");
  if (max_iters < 1) throw std::invalid_argument("estimator: max_iters must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("estimator: tolerance must be positive");
  if (num_sources < 1) throw std::invalid_argument("estimator: num_sources must be >= 1");
}

SblState init_state(const Eigen::MatrixXcd& snapshots, const GridDictionary& dict,
                    const EstimatorConfig& cfg) {
  cfg.validate();
  const int m = dict.num_sensors();
  const int n = dict.num_angles();
  const int l = static_cast<int>(snapshots.cols());
  if (snapshots.rows() != m) throw std::invalid_argument("init_state: sensor count mismatch");
  if (l < 1) throw std::invalid_argument("init_state: needs at least one snapshot");
  if (snapshots.squaredNorm() == 0.0)
    throw std::invalid_argument("init_state: snapshot matrix is identically zero");

  SblState st;
  st.dict = dict;

  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(m, m);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(snapshots, 1.0 / l);
  st.sample_cov = cov.selfadjointView<Eigen::Lower>();

  // Matched-filter power spectrum as the starting point.
  const Eigen::MatrixXcd matched = kernels::adjoint_product(dict.steering, snapshots);
  st.delta = (matched.rowwise().squaredNorm() /
              (static_cast<double>(l) * m * m)).cwiseMax(kPowerFloor);
  st.alpha = m / (0.1 * st.sample_cov.trace().real());
  st.eta = update_eta(st.delta, cfg.sigma);
  st.beta = Eigen::VectorXd::Zero(n);

  st.gram_bb = kernels::adjoint_product(dict.derivative, dict.derivative);
  kernels::hermitize(st.gram_bb);
  st.gram_ba = kernels::adjoint_product(dict.derivative, dict.steering);
  return st;
}

void e_step(const Eigen::MatrixXcd& snapshots, SblState& st) {
  const int m = st.dict.num_sensors();
  const int n = st.dict.num_angles();

  st.phi = st.dict.steering + st.dict.derivative * st.beta.asDiagonal();

  Eigen::MatrixXcd weighted = st.phi * st.delta.cwiseSqrt().asDiagonal();
  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Identity(m, m) / st.alpha;
  cov.selfadjointView<Eigen::Lower>().rankUpdate(weighted);
  st.sigma_y = cov.selfadjointView<Eigen::Lower>();

  st.model_cov = st.sigma_y;
  st.model_cov.diagonal().array() -= 1.0 / st.alpha;

  st.sigma_y_llt.compute(st.sigma_y);
  if (st.sigma_y_llt.info() != Eigen::Success)
    throw std::runtime_error("e_step: snapshot covariance is numerically singular");

  // T = sigma_y^-1 Phi carries every rank-M identity below.
  const Eigen::MatrixXcd t_solve = st.sigma_y_llt.solve(st.phi);
  st.mu = st.delta.asDiagonal() *
          kernels::adjoint_product(st.phi, st.sigma_y_llt.solve(snapshots));

  Eigen::MatrixXcd corr = kernels::adjoint_product(st.phi, t_solve);  // Phi^H T
  kernels::hermitize(corr);
  const Eigen::MatrixXcd rt = st.sample_cov * t_solve;
  Eigen::MatrixXcd energy = kernels::adjoint_product(t_solve, rt);    // T^H R T
  kernels::hermitize(energy);
  st.resp_corr = rt * st.delta.asDiagonal();

  st.sigma.resize(n, n);
  st.mu_outer_avg.resize(n, n);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    st.sigma.col(j) = -(st.delta.array() * corr.col(j).array() * st.delta(j)).matrix();
    st.sigma(j, j) += st.delta(j);
    st.mu_outer_avg.col(j) =
        (st.delta.array() * energy.col(j).array() * st.delta(j)).matrix();
  }
  for (int j = 0; j < n; ++j) {
    // Rounding can leave a tiny negative or imaginary residue on the diagonal.
    st.sigma(j, j) = std::max(st.sigma(j, j).real(), 0.0);
    st.mu_outer_avg(j, j) = std::max(st.mu_outer_avg(j, j).real(), 0.0);
  }
}

Eigen::VectorXd update_delta(const SblState& st, int snapshots) {
  const int n = static_cast<int>(st.delta.size());
  Eigen::VectorXd next(n);
  for (int i = 0; i < n; ++i) {
    const double w = st.sigma(i, i).real() / st.delta(i) - 1.0;
    const double moment = st.mu.row(i).squaredNorm();
    const double eta2 = st.eta(i) * st.eta(i);
    const double h = 0.5 + snapshots * w;
    const double root = std::sqrt(h * h + moment * eta2);
    // Positive root of (eta^2/4) d^2 - h d - moment = 0, rationalized for h < 0.
    const double value = h >= 0.0 ? 2.0 * (h + root) / eta2
                                  : 2.0 * moment / (root - h);
    next(i) = std::max(value, kPowerFloor);
  }
  return next;
}

Eigen::VectorXd update_eta(const Eigen::VectorXd& delta, double sigma) {
  Eigen::VectorXd next(delta.size());
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    // (-sigma + sqrt(sigma^2 + 2 delta (sigma+2))) / delta, rationalized so the
    // delta -> 0 limit (sigma+2)/sigma is reached without cancellation.
    const double root = std::sqrt(sigma * sigma + 2.0 * delta(i) * (sigma + 2.0));
    next(i) = 2.0 * (sigma + 2.0) / (sigma + root);
  }
  return next;
}

double update_alpha(const Eigen::MatrixXcd& snapshots, SblState& st, int num_snapshots) {
  const int m = st.dict.num_sensors();
  const Eigen::MatrixXcd solved = st.sigma_y_llt.solve(st.model_cov);  // sigma_y^-1 D

  // Phi mu == D sigma_y^-1 Y for the e_step posterior.
  const double residual =
      std::max(0.0, (snapshots - solved.adjoint() * snapshots).squaredNorm());
  const double trace_term = std::max(
      0.0, st.model_cov.trace().real() -
               st.model_cov.cwiseProduct(solved.transpose()).sum().real());

  double denom = residual + num_snapshots * trace_term;
  st.alpha_floored = denom < kDenominatorFloor;
  if (st.alpha_floored) denom = kDenominatorFloor;
  return static_cast<double>(m) * num_snapshots / denom;
}

OffgridSystem offgrid_system(const SblState& st) {
  const int n = st.dict.num_angles();
  OffgridSystem sys;
  sys.weight.resize(n, n);
  sys.target.resize(n);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    sys.weight.col(j) = st.gram_bb.col(j)
                            .conjugate()
                            .cwiseProduct(st.mu_outer_avg.col(j) + st.sigma.col(j))
                            .real();
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const std::complex<double> fit =
        st.dict.derivative.col(i).adjoint() * st.resp_corr.col(i);
    const std::complex<double> leak =
        st.gram_ba.row(i) * (st.mu_outer_avg.col(i) + st.sigma.col(i));
    sys.target(i) = fit.real() - leak.real();
  }
  return sys;
}

Eigen::VectorXd solve_offset_system(const OffgridSystem& sys, double bound,
                                    const Eigen::VectorXd& warm_start) {
  const int n = static_cast<int>(sys.target.size());
  Eigen::VectorXd beta;

  const double diag_max = sys.weight.diagonal().maxCoeff();
  const double diag_min = sys.weight.diagonal().minCoeff();
  bool direct = diag_min > 0.0 && diag_max / diag_min < kDirectSolveCondition;
  if (direct) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(sys.weight);
    direct = ldlt.info() == Eigen::Success && ldlt.rcond() > 1.0 / kDirectSolveCondition;
    if (direct) beta = ldlt.solve(sys.target);
  }
  if (!direct) {
    beta = warm_start;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      const Eigen::VectorXd previous = beta;
      for (int i = 0; i < n; ++i) {
        const double pivot = sys.weight(i, i);
        if (!(pivot > 0.0)) {
          beta(i) = 0.0;
          continue;
        }
        const double off = sys.weight.row(i).dot(beta) - pivot * beta(i);
        beta(i) = (sys.target(i) - off) / pivot;
      }
      const double change =
          (beta - previous).norm() / std::max(previous.norm(), 1e-12);
      if (change < kSweepTolerance) break;
    }
  }
  return beta.cwiseMax(-bound).cwiseMin(bound);
}

Eigen::VectorXd update_beta(const SblState& st) {
  const double bound = 0.5 * st.dict.step * kDegToRad;
  return solve_offset_system(offgrid_system(st), bound, st.beta);
}

int refine_grid(SblState& st, const std::vector<int>& peak_indices) {
  const int n = st.dict.num_angles();
  const std::vector<double> before = st.dict.grid;
  const double half_step = 0.5 * st.dict.step;

  std::vector<int> moved;
  for (int idx : peak_indices) {
    if (idx < 0 || idx >= n) throw std::invalid_argument("refine_grid: peak index out of range");
    const double offset_deg = st.beta(idx) * kRadToDeg;
    if (offset_deg == 0.0) continue;
    const double proposed = before[idx] + offset_deg;
    const double lo = idx > 0 ? 0.5 * (before[idx - 1] + before[idx])
                              : before[idx] - half_step;
    const double hi = idx < n - 1 ? 0.5 * (before[idx] + before[idx + 1])
                                  : before[idx] + half_step;
    if (proposed < lo || proposed > hi) continue;  // rejected, offset kept

    st.dict.grid[idx] = proposed;
    st.beta(idx) = 0.0;
    st.dict.steering.col(idx) = steering_vector(proposed, st.dict.geometry);
    st.dict.derivative.col(idx) = steering_derivative(proposed, st.dict.geometry);
    moved.push_back(idx);
  }

  // Gram caches after all columns are in place; rows first, conjugate columns after.
  for (int idx : moved) {
    st.gram_bb.row(idx) = st.dict.derivative.col(idx).adjoint() * st.dict.derivative;
    st.gram_ba.row(idx) = st.dict.derivative.col(idx).adjoint() * st.dict.steering;
  }
  for (int idx : moved) {
    st.gram_bb.col(idx) = st.gram_bb.row(idx).adjoint();
    st.gram_bb(idx, idx) = st.gram_bb(idx, idx).real();
    st.gram_ba.col(idx) = st.dict.derivative.adjoint() * st.dict.steering.col(idx);
  }
  return static_cast<int>(moved.size());
}

SblResult run_offgrid_sbl(const Eigen::MatrixXcd& snapshots, const GridDictionary& dict,
                          const EstimatorConfig& cfg) {
  SblState st = init_state(snapshots, dict, cfg);
  const int l = static_cast<int>(snapshots.cols());

  SblResult result;
  result.trace.reserve(std::min(cfg.max_iters, 256));
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    e_step(snapshots, st);

    const Eigen::VectorXd next_delta = update_delta(st, l);
    const double change =
        (next_delta - st.delta).norm() / std::max(st.delta.norm(), 1e-300);
    st.delta = next_delta;
    st.eta = update_eta(st.delta, cfg.sigma);
    st.alpha = update_alpha(snapshots, st, l);
    st.beta = update_beta(st);

    int moves = 0;
    if (cfg.grid_refine) {
      std::vector<int> indices;
      if (iter >= 2) {
        const PeakSearch found = find_peaks(st.delta, st.dict.grid, cfg.num_sources);
        indices.reserve(found.peaks.size());
        for (const PeakCluster& p : found.peaks) indices.push_back(p.index);
        moves = refine_grid(st, indices);
      }
      // Offsets are consumed by grid motion: between iterations only the peak
      // columns carry one, so a rejected move keeps modeling grid + offset
      // while a near-zero column never parks an offset on top of a neighbor
      // source and cancels the pull on the peak column.
      Eigen::VectorXd kept = Eigen::VectorXd::Zero(st.beta.size());
      for (int idx : indices) kept(idx) = st.beta(idx);
      st.beta = std::move(kept);
    }

    result.trace.push_back({iter, change, st.alpha, moves});
    result.iterations = iter;
    if (change < cfg.tolerance) {
      result.converged = true;
      break;
    }
  }
  // Refresh the posterior at the final hyperparameters so sigma_y contains
  // exactly delta_n phi_n phi_n^H per component; peak refinement deflates
  // against that decomposition.
  e_step(snapshots, st);
  result.state = std::move(st);
  return result;
}

}  // namespace sbldoa
