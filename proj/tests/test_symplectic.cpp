#include <gtest/gtest.h>

#include <array>
#include <random>

#include "gslocc/symmetric_state.hpp"
#include "gslocc/symplectic.hpp"
#include "oracles.hpp"

using namespace gslocc;

TEST(Omega, Structure) {
  const Matrix w = make_omega(2).matrix();
  EXPECT_EQ(w.rows(), 4);
  EXPECT_EQ(w(0, 1), 1.0);
  EXPECT_EQ(w(1, 0), -1.0);
  EXPECT_EQ(w(0, 2), 0.0);
  EXPECT_LT((w * w + Matrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(CovarianceMatrix, Validation) {
  EXPECT_THROW(CovarianceMatrix(Matrix::Identity(3, 3)), std::invalid_argument);
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = 0.5;
  EXPECT_THROW(CovarianceMatrix{a}, std::invalid_argument);
  EXPECT_EQ(CovarianceMatrix::vacuum(3).n_modes(), 3);
}

TEST(SymplecticOp, RejectsNonSymplectic) {
  Matrix a = Matrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(SymplecticOp{a}, std::invalid_argument);
}

TEST(Gates, AreSymplectic) {
  EXPECT_LT(symplectic_defect(beam_splitter(0.3, 0, 2, 3).matrix()), 1e-14);
  EXPECT_LT(symplectic_defect(local_squeezer(7.0, 1, 3).matrix()), 1e-14);
  EXPECT_LT(symplectic_defect(qnd_gate(1.7, 0, 1, 2).matrix()), 1e-14);
  for (int n = 2; n <= 8; ++n) EXPECT_LT(symplectic_defect(nport_distributor(n).matrix()), 1e-13);
}

TEST(Gates, SqueezerScaling) {
  const CovarianceMatrix out = apply_symplectic(local_squeezer(4.0, 0, 1), CovarianceMatrix::vacuum(1));
  EXPECT_NEAR(out(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(out(1, 1), 4.0, 1e-15);
}

TEST(Gates, DistributorLastColumnIsUniform) {
  for (int n = 2; n <= 6; ++n) {
    const Matrix s = nport_distributor(n).matrix();
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(s(2 * k, 2 * (n - 1)), 1.0 / std::sqrt(n), 1e-14);
      EXPECT_NEAR(s(2 * k + 1, 2 * (n - 1) + 1), 1.0 / std::sqrt(n), 1e-14);
    }
  }
}

TEST(Gates, QndCopiesX) {
  // Ancilla x picks up g x_signal; signal p picks up -g p_ancilla.
  const CovarianceMatrix out = apply_symplectic(qnd_gate(2.0, 0, 1, 2), CovarianceMatrix::vacuum(2));
  EXPECT_NEAR(out(2, 2), 5.0, 1e-14);
  EXPECT_NEAR(out(0, 2), 2.0, 1e-14);
  EXPECT_NEAR(out(1, 1), 5.0, 1e-14);
  EXPECT_NEAR(out(1, 3), -2.0, 1e-14);
}

TEST(Physicality, VacuumAndViolation) {
  EXPECT_TRUE(is_physical(CovarianceMatrix::vacuum(3)));
  Matrix g = Matrix::Identity(2, 2);
  g(0, 0) = 0.5;
  g(1, 1) = 1.5;
  EXPECT_FALSE(is_physical(CovarianceMatrix{g}));
  g(1, 1) = 2.0;
  EXPECT_TRUE(is_physical(CovarianceMatrix{g}));
}

TEST(Spectrum, VacuumIsOne) {
  const Vector nu = symplectic_spectrum(CovarianceMatrix::vacuum(4));
  for (Eigen::Index i = 0; i < nu.size(); ++i) EXPECT_NEAR(nu(i), 1.0, 1e-12);
}

TEST(Spectrum, MatchesOracleAndIsInvariant) {
  std::mt19937_64 rng(5);
  const std::vector<SymmetricState> states = sample_physical(4.0, 4.0, 3, 100, 17);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (const SymmetricState& s : states) {
    const CovarianceMatrix g = build_cm(s);
    const Vector nu = symplectic_spectrum(g);
    const std::vector<double> ref = oracle::symplectic_eigs(g.matrix());
    ASSERT_EQ(nu.size(), static_cast<Eigen::Index>(ref.size()));
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(nu(static_cast<Eigen::Index>(i)), ref[i], 1e-9);
    const SymplecticOp op = beam_splitter(unit(rng), 0, 1, 3) * local_squeezer(1.0 + 3 * unit(rng), 2, 3) *
                            qnd_gate(unit(rng), 1, 2, 3);
    const Vector moved = symplectic_spectrum(apply_symplectic(op, g));
    for (Eigen::Index i = 0; i < nu.size(); ++i) EXPECT_NEAR(moved(i), nu(i), 1e-9 * (1.0 + nu(i)));
  }
}

TEST(PartialTranspose, FlipsMomentumSigns) {
  const CovarianceMatrix g = build_cm({3, 4.0, 4.0, 1.0, 1.0});
  const std::array<int, 1> first{0};
  const Matrix pt = partial_transpose(g, first).matrix();
  EXPECT_LT((pt - oracle::transpose_mode(g.matrix(), 0)).norm(), 1e-15);
  const std::array<int, 3> all{0, 1, 2};
  EXPECT_NO_THROW(partial_transpose(g, all));
  const std::array<int, 2> repeated{1, 1};
  EXPECT_THROW(partial_transpose(g, repeated), std::invalid_argument);
  const std::array<int, 1> out_of_range{3};
  EXPECT_THROW(partial_transpose(g, out_of_range), std::out_of_range);
}

TEST(Homodyne, SchurComplement) {
  // Two-mode EPR-like state; measuring x on mode 1 leaves Vx - c^2/Vx on mode 0.
  Matrix g = oracle::symmetric_cm(2, 3.0, 3.0, 2.0, 2.0);
  const CovarianceMatrix out = homodyne_condition(CovarianceMatrix{g}, 1, Quadrature::x);
  EXPECT_EQ(out.n_modes(), 1);
  EXPECT_NEAR(out(0, 0), 3.0 - 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(out(1, 1), 3.0, 1e-14);
  const CovarianceMatrix outp = homodyne_condition(CovarianceMatrix{g}, 0, Quadrature::p);
  EXPECT_NEAR(outp(1, 1), 3.0 - 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(outp(0, 0), 3.0, 1e-14);
}

TEST(Homodyne, RejectsZeroVariance) {
  Matrix g = Matrix::Identity(4, 4);
  g(2, 2) = 0.0;
  EXPECT_THROW(homodyne_condition(CovarianceMatrix{g}, 1, Quadrature::x), std::invalid_argument);
}

TEST(Noise, RequiresPsd) {
  const CovarianceMatrix v = CovarianceMatrix::vacuum(1);
  EXPECT_THROW(add_noise(v, -Matrix::Identity(2, 2)), std::invalid_argument);
  EXPECT_NEAR(add_noise(v, Matrix::Identity(2, 2))(0, 0), 2.0, 1e-15);
}

TEST(Permute, ReordersModes) {
  Matrix g = Matrix::Identity(4, 4);
  g(0, 0) = 2.0;
  const std::array<int, 2> order{1, 0};
  EXPECT_NEAR(permute_modes(CovarianceMatrix{g}, order)(2, 2), 2.0, 1e-15);
  EXPECT_NEAR(direct_sum(CovarianceMatrix{g}, CovarianceMatrix::vacuum(1)).n_modes(), 3, 0);
}
