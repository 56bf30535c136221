#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <vector>

namespace sbldoa {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Linear array described by integer multiples of a unit spacing.
// Positions are ascending, distinct, and start at 0.
struct ArrayGeometry {
  std::vector<int> positions;
  double unit_spacing = 0.5;  // in wavelengths when wavelength == 1
  double wavelength = 1.0;

  int size() const { return static_cast<int>(positions.size()); }
  void validate() const;

  static ArrayGeometry coprime(int n1, int n2, double unit_spacing = 0.5,
                               double wavelength = 1.0);
};

// Sensor index set {0, n2, 2*n2, ..., (2*n1-1)*n2} U {0, n1, 2*n1, ..., (n2-1)*n1}
// for coprime n1 < n2; sorted, duplicates removed, cardinality 2*n1 + n2 - 1.
std::vector<int> coprime_positions(int n1, int n2);

// Unit-modulus steering vector; entry m is exp(-2*pi*j * p_m * d * sin(theta) / lambda).
Eigen::VectorXcd steering_vector(double theta_deg, const ArrayGeometry& geom);

// Derivative of the steering vector with respect to theta in radians.
Eigen::VectorXcd steering_derivative(double theta_deg, const ArrayGeometry& geom);

// Inclusive-start uniform grid: lo, lo+step, ... while <= hi (+ tiny slack so
// an exact endpoint is kept despite rounding).
std::vector<double> uniform_grid(double lo_deg, double hi_deg, double step_deg);

// Steering dictionary A and its angle derivative B over a fixed grid.
// Grid angles are degrees; derivative columns are with respect to radians.
struct GridDictionary {
  ArrayGeometry geometry;
  std::vector<double> grid;    // strictly increasing, degrees
  double step = 0.0;           // nominal spacing in degrees (0 for a single point)
  Eigen::MatrixXcd steering;   // M x N
  Eigen::MatrixXcd derivative; // M x N

  int num_sensors() const { return static_cast<int>(steering.rows()); }
  int num_angles() const { return static_cast<int>(steering.cols()); }
};

GridDictionary build_dictionary(const std::vector<double>& grid_deg,
                                const ArrayGeometry& geom);
GridDictionary build_dictionary(const std::vector<double>& grid_deg,
                                const ArrayGeometry& geom, double step_deg);

}  // namespace sbldoa
