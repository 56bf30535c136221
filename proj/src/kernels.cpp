#include "sbldoa/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace sbldoa::kernels {

Eigen::MatrixXcd adjoint_product(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs) {
  if (lhs.rows() != rhs.rows()) throw std::invalid_argument("adjoint_product: row mismatch");
  Eigen::MatrixXcd out(lhs.cols(), rhs.cols());
  const Eigen::Index cols = rhs.cols();
  const Eigen::Index chunks = (cols + kChunkCols - 1) / kChunkCols;
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < chunks; ++c) {
    const Eigen::Index j0 = c * kChunkCols;
    const Eigen::Index nb = std::min(kChunkCols, cols - j0);
    out.middleCols(j0, nb).noalias() = lhs.adjoint() * rhs.middleCols(j0, nb);
  }
  return out;
}

Eigen::MatrixXcd product(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("product: dimension mismatch");
  Eigen::MatrixXcd out(lhs.rows(), rhs.cols());
  const Eigen::Index cols = rhs.cols();
  const Eigen::Index chunks = (cols + kChunkCols - 1) / kChunkCols;
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < chunks; ++c) {
    const Eigen::Index j0 = c * kChunkCols;
    const Eigen::Index nb = std::min(kChunkCols, cols - j0);
    out.middleCols(j0, nb).noalias() = lhs * rhs.middleCols(j0, nb);
  }
  return out;
}

void hermitize(Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitize: matrix must be square");
  m = 0.5 * (m + m.adjoint()).eval();
}

}  // namespace sbldoa::kernels
