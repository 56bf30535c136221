#pragma once

#include <Eigen/Dense>

namespace sbldoa::kernels {

// Column-chunked OpenMP matrix products. Chunk boundaries are fixed, so the
// result is bitwise identical for any thread count (including one).
inline constexpr Eigen::Index kChunkCols = 32;

// lhs^H * rhs
Eigen::MatrixXcd adjoint_product(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs);

// lhs * rhs
Eigen::MatrixXcd product(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs);

// Symmetrize in place: m <- (m + m^H) / 2.
void hermitize(Eigen::MatrixXcd& m);

}  // namespace sbldoa::kernels
