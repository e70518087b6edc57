#include <gtest/gtest.h>

#include <random>

#include "gslocc/linalg.hpp"
#include "oracles.hpp"

using namespace gslocc;

namespace {

Matrix random_symmetric(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  return 0.5 * (a + a.transpose());
}

}  // namespace

TEST(Jacobi, DiagonalInput) {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3.0, -1.0, 2.0;
  const SymmetricEigen e = jacobi_eigen(d);
  EXPECT_DOUBLE_EQ(e.values(0), -1.0);
  EXPECT_DOUBLE_EQ(e.values(1), 2.0);
  EXPECT_DOUBLE_EQ(e.values(2), 3.0);
}

TEST(Jacobi, TwoByTwo) {
  Matrix a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const SymmetricEigen e = jacobi_eigen(a);
  EXPECT_NEAR(e.values(0), 1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 3.0, 1e-14);
}

TEST(Jacobi, MatchesReferenceSolverOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 1 + trial % 12;
    const Matrix a = random_symmetric(rng, dim);
    const SymmetricEigen e = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<Matrix> ref(a);
    for (int i = 0; i < dim; ++i) EXPECT_NEAR(e.values(i), ref.eigenvalues()(i), 1e-11);
    const Matrix rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    EXPECT_LT((rebuilt - a).norm(), 1e-11 * (1.0 + a.norm()));
    EXPECT_LT((e.vectors.transpose() * e.vectors - Matrix::Identity(dim, dim)).norm(), 1e-12);
  }
}

TEST(Jacobi, RejectsNonSquare) {
  EXPECT_THROW(jacobi_eigen(Matrix(2, 3)), std::invalid_argument);
}

TEST(Psd, ToleranceIsRelative) {
  Matrix a = Matrix::Identity(2, 2) * 1e6;
  a(1, 1) = -1e-4;  // within 1e-9 * 1e6
  EXPECT_TRUE(is_psd(a));
  a(1, 1) = -1e-2;
  EXPECT_FALSE(is_psd(a));
}

TEST(SqrtPsd, SquaresBack) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix b = random_symmetric(rng, 6);
    const Matrix a = b * b;
    const Matrix root = sqrt_psd(a);
    EXPECT_LT((root * root - a).norm(), 1e-10 * (1.0 + a.norm()));
  }
}
