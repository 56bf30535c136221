#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbldoa/kernels.hpp"
#include "sbldoa/rng.hpp"

using namespace sbldoa;

namespace {
Eigen::MatrixXcd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_gaussian(1.0);
  return m;
}
}  // namespace

TEST_CASE("chunked products match plain Eigen") {
  Rng rng(3);
  // Sizes straddle the chunk width, including non-multiples and tiny edges.
  const int sizes[][3] = {{9, 181, 200}, {9, 181, 31}, {5, 7, 1}, {4, 32, 64}, {3, 33, 2}};
  for (const auto& s : sizes) {
    const Eigen::MatrixXcd lhs = random_matrix(s[0], s[1], rng);
    const Eigen::MatrixXcd rhs = random_matrix(s[0], s[2], rng);

    const Eigen::MatrixXcd got = kernels::adjoint_product(lhs, rhs);
    const Eigen::MatrixXcd want = lhs.adjoint() * rhs;
    CHECK((got - want).norm() / want.norm() < 1e-13);

    const Eigen::MatrixXcd got2 = kernels::product(lhs.adjoint(), rhs);
    CHECK((got2 - want).norm() / want.norm() < 1e-13);
  }
}

TEST_CASE("chunked products reject mismatched shapes") {
  Rng rng(4);
  const Eigen::MatrixXcd a = random_matrix(3, 4, rng);
  const Eigen::MatrixXcd b = random_matrix(5, 2, rng);
  CHECK_THROWS_AS(kernels::adjoint_product(a, b), std::invalid_argument);
  CHECK_THROWS_AS(kernels::product(a, b), std::invalid_argument);
}

TEST_CASE("hermitize symmetrizes in place") {
  Rng rng(5);
  Eigen::MatrixXcd m = random_matrix(6, 6, rng);
  kernels::hermitize(m);
  CHECK((m - m.adjoint()).norm() < 1e-14);
}
