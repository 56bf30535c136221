#include "sbldoa/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbldoa {

PeakSearch find_peaks(const Eigen::VectorXd& power, const std::vector<double>& grid_deg,
                      int k) {
  const int n = static_cast<int>(power.size());
  if (n == 0 || grid_deg.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("find_peaks: power and grid sizes must match");
  if (k < 1) throw std::invalid_argument("find_peaks: k must be >= 1");

  std::vector<int> candidates;
  for (int i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || power(i) >= power(i - 1);
    const bool right_ok = i == n - 1 || power(i) >= power(i + 1);
    if (left_ok && right_ok) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (power(a) != power(b)) return power(a) > power(b);
    return a < b;
  });
  if (static_cast<int>(candidates.size()) > k) candidates.resize(k);
  std::sort(candidates.begin(), candidates.end());

  PeakSearch out;
  out.shortfall = static_cast<int>(candidates.size()) < k;
  for (int i : candidates) {
    PeakCluster c;
    c.index = i;
    c.theta_deg = grid_deg[i];
    c.power = power(i);
    if (i > 0) {
      c.has_left = true;
      c.left_theta_deg = grid_deg[i - 1];
      c.left_power = power(i - 1);
    }
    if (i < n - 1) {
      c.has_right = true;
      c.right_theta_deg = grid_deg[i + 1];
      c.right_power = power(i + 1);
    }
    out.peaks.push_back(c);
  }
  return out;
}

void scan_interval(const PeakCluster& peak, double* lo_deg, double* hi_deg) {
  if (peak.has_left && peak.has_right) {
    if (peak.left_power > peak.right_power) {
      *lo_deg = peak.left_theta_deg;
      *hi_deg = peak.theta_deg;
    } else {
      *lo_deg = peak.theta_deg;
      *hi_deg = peak.right_theta_deg;
    }
  } else if (peak.has_left) {
    *lo_deg = peak.left_theta_deg;
    *hi_deg = peak.theta_deg;
  } else if (peak.has_right) {
    *lo_deg = peak.theta_deg;
    *hi_deg = peak.right_theta_deg;
  } else {
    *lo_deg = peak.theta_deg;
    *hi_deg = peak.theta_deg;
  }
}

double refined_power(double u, double v, double eta, int num_snapshots) {
  if (!(u > 0.0) || !std::isfinite(u) || !std::isfinite(v)) return 0.0;
  const double l = num_snapshots;
  const double eta2 = eta * eta;
  const double gain = v - l * u - 0.25 * eta2;
  if (gain <= 0.0) return 0.0;
  // Positive root of (eta^2/4) d^2 + l u d - (v - l u - eta^2/4) ... rationalized
  // so weak peaks (gain -> 0+) lose no precision.
  const double root = std::sqrt(l * l * u * u + eta2 * v);
  return 2.0 * gain / (u * (root + l * u + 0.5 * eta2));
}

double refinement_objective(double u, double v, double eta, int num_snapshots) {
  const double d = refined_power(u, v, eta, num_snapshots);
  if (d <= 0.0) return 0.0;
  const double l = num_snapshots;
  return -l * std::log1p(d * u) + v * d / (1.0 + u * d) - 0.25 * eta * eta * d;
}

double refine_peak(const PeakCluster& peak, const Eigen::MatrixXcd& snapshots,
                   const SblState& st, double fine_step_deg, bool* fallback) {
  if (fallback) *fallback = false;
  if (!(fine_step_deg > 0.0))
    throw std::invalid_argument("refine_peak: fine step must be positive");

  double lo = 0.0, hi = 0.0;
  scan_interval(peak, &lo, &hi);
  if (lo == hi) return peak.theta_deg;

  const int m = static_cast<int>(st.sigma_y.rows());
  const int l = static_cast<int>(snapshots.cols());

  // Deflate the peak's own component once; all candidates reuse the result.
  // The component inside sigma_y is the composed column a + b beta, so the
  // deflated matrix stays positive definite up to rounding.
  const Eigen::VectorXcd phi_peak =
      st.dict.steering.col(peak.index) +
      st.dict.derivative.col(peak.index) * st.beta(peak.index);
  Eigen::MatrixXcd deflated = st.sigma_y;
  deflated.noalias() -= peak.power * (phi_peak * phi_peak.adjoint());
  Eigen::LLT<Eigen::MatrixXcd> llt(deflated);
  if (llt.info() != Eigen::Success) {
    if (fallback) *fallback = true;
    return peak.theta_deg;
  }
  const Eigen::MatrixXcd inv = llt.solve(Eigen::MatrixXcd::Identity(m, m));
  const Eigen::MatrixXcd data_kernel = inv * st.sample_cov * inv;
  const double eta = st.eta(peak.index);

  const auto score = [&](double theta_deg) {
    const Eigen::VectorXcd a = steering_vector(theta_deg, st.dict.geometry);
    const double u = a.dot(inv * a).real();
    const double v = l * a.dot(data_kernel * a).real();
    return refinement_objective(u, v, eta, l);
  };

  double best_theta = peak.theta_deg;
  double best = score(peak.theta_deg);
  const double slack = fine_step_deg * 1e-9;
  for (int i = 0;; ++i) {
    const double theta = lo + i * fine_step_deg;
    if (theta > hi + slack) break;
    const double value = score(theta);
    if (value > best) {
      best = value;
      best_theta = theta;
    }
  }
  const double at_hi = score(hi);
  if (at_hi > best) best_theta = hi;
  return best_theta;
}

}  // namespace sbldoa
