#include "sbldoa/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sbldoa {

void ArrayGeometry::validate() const {
  if (positions.empty()) throw std::invalid_argument("array: no sensors");
  if (positions.front() != 0) throw std::invalid_argument("array: first position must be 0");
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (positions[i] <= positions[i - 1])
      throw std::invalid_argument("array: positions must be strictly ascending");
  }
  if (!(unit_spacing > 0.0)) throw std::invalid_argument("array: unit spacing must be positive");
  if (!(wavelength > 0.0)) throw std::invalid_argument("array: wavelength must be positive");
}

ArrayGeometry ArrayGeometry::coprime(int n1, int n2, double unit_spacing,
                                     double wavelength) {
  ArrayGeometry geom;
  geom.positions = coprime_positions(n1, n2);
  geom.unit_spacing = unit_spacing;
  geom.wavelength = wavelength;
  geom.validate();
  return geom;
}

std::vector<int> coprime_positions(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("coprime_positions: factors must be positive");
  if (n1 >= n2) throw std::invalid_argument("coprime_positions: requires n1 < n2");
  if (std::gcd(n1, n2) != 1) throw std::invalid_argument("coprime_positions: factors must be coprime");

  std::set<int> merged;
  for (int k = 0; k < 2 * n1; ++k) merged.insert(k * n2);
  for (int k = 0; k < n2; ++k) merged.insert(k * n1);
  return {merged.begin(), merged.end()};
}

Eigen::VectorXcd steering_vector(double theta_deg, const ArrayGeometry& geom) {
  const double phase_per_unit = -2.0 * std::numbers::pi * geom.unit_spacing /
                                geom.wavelength * std::sin(theta_deg * kDegToRad);
  Eigen::VectorXcd a(geom.size());
  for (int m = 0; m < geom.size(); ++m)
    a(m) = std::polar(1.0, phase_per_unit * geom.positions[m]);
  return a;
}

Eigen::VectorXcd steering_derivative(double theta_deg, const ArrayGeometry& geom) {
  const Eigen::VectorXcd a = steering_vector(theta_deg, geom);
  const double scale = -2.0 * std::numbers::pi * geom.unit_spacing /
                       geom.wavelength * std::cos(theta_deg * kDegToRad);
  Eigen::VectorXcd b(geom.size());
  for (int m = 0; m < geom.size(); ++m)
    b(m) = std::complex<double>(0.0, scale * geom.positions[m]) * a(m);
  return b;
}

std::vector<double> uniform_grid(double lo_deg, double hi_deg, double step_deg) {
  if (!(step_deg > 0.0)) throw std::invalid_argument("uniform_grid: step must be positive");
  if (!(lo_deg < hi_deg)) throw std::invalid_argument("uniform_grid: empty range");
  if (step_deg >= hi_deg - lo_deg)
    throw std::invalid_argument("uniform_grid: step must be smaller than the range");

  std::vector<double> grid;
  const double slack = step_deg * 1e-9;
  for (int k = 0;; ++k) {
    const double angle = lo_deg + k * step_deg;
    if (angle > hi_deg + slack) break;
    grid.push_back(angle);
  }
  return grid;
}

GridDictionary build_dictionary(const std::vector<double>& grid_deg,
                                const ArrayGeometry& geom) {
  double step = 0.0;
  for (std::size_t i = 1; i < grid_deg.size(); ++i) {
    const double gap = grid_deg[i] - grid_deg[i - 1];
    if (step == 0.0 || gap < step) step = gap;
  }
  return build_dictionary(grid_deg, geom, step);
}

GridDictionary build_dictionary(const std::vector<double>& grid_deg,
                                const ArrayGeometry& geom, double step_deg) {
  geom.validate();
  if (grid_deg.empty()) throw std::invalid_argument("build_dictionary: empty grid");
  for (std::size_t i = 1; i < grid_deg.size(); ++i) {
    if (grid_deg[i] <= grid_deg[i - 1])
      throw std::invalid_argument("build_dictionary: grid must be strictly increasing");
  }
  if (step_deg < 0.0) throw std::invalid_argument("build_dictionary: negative step");

  GridDictionary dict;
  dict.geometry = geom;
  dict.grid = grid_deg;
  dict.step = step_deg;
  const int m = geom.size();
  const int n = static_cast<int>(grid_deg.size());
  dict.steering.resize(m, n);
  dict.derivative.resize(m, n);
  for (int j = 0; j < n; ++j) {
    dict.steering.col(j) = steering_vector(grid_deg[j], geom);
    dict.derivative.col(j) = steering_derivative(grid_deg[j], geom);
  }
  return dict;
}

}  // namespace sbldoa
