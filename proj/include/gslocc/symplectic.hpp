#pragma once

// Covariance-matrix algebra for N bosonic modes.
//
// Conventions used throughout the library:
//   * quadrature ordering (x_1, p_1, ..., x_N, p_N);
//   * x = a + a^dagger, p = i(a^dagger - a), so the vacuum has covariance I
//     and [r_j, r_k] = 2i Omega_jk;
//   * gamma_jk = <{dr_j, dr_k}>/2.
// Results quoted elsewhere with vacuum variance 1/2 differ by a factor of 2.

#include <span>

#include "gslocc/linalg.hpp"

namespace gslocc {

enum class Quadrature { x, p };

/// Real symmetric 2N x 2N second-moment matrix. Physicality is not enforced
/// on construction; use is_physical.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries);

  static CovarianceMatrix vacuum(int n_modes);

  int n_modes() const { return static_cast<int>(entries_.rows() / 2); }
  const Matrix& matrix() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  /// 2x2 block coupling modes i and j.
  Eigen::Matrix2d block(int i, int j) const;

 private:
  Matrix entries_;
};

/// Omega = direct sum of [[0, 1], [-1, 0]].
class SymplecticForm {
 public:
  explicit SymplecticForm(int n_modes);

  int n_modes() const { return static_cast<int>(entries_.rows() / 2); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Real 2N x 2N matrix S with S Omega S^T = Omega, checked on construction.
class SymplecticOp {
 public:
  explicit SymplecticOp(Matrix entries);

  static SymplecticOp identity(int n_modes);

  int n_modes() const { return static_cast<int>(entries_.rows() / 2); }
  const Matrix& matrix() const { return entries_; }

  /// Composition: (a * b) applies b first, then a.
  friend SymplecticOp operator*(const SymplecticOp& a, const SymplecticOp& b);

 private:
  Matrix entries_;
};

SymplecticForm make_omega(int n_modes);

/// max |S Omega S^T - Omega|.
double symplectic_defect(const Matrix& s);

/// gamma -> S gamma S^T.
CovarianceMatrix apply_symplectic(const SymplecticOp& s, const CovarianceMatrix& gamma);

/// Passive N-port that spreads input mode N evenly over every output port.
/// Acts as the same orthogonal matrix O on the x and p vectors; the last
/// column of O is (1, ..., 1)/sqrt(N). O is a cascade of N-1 beam splitters
/// with transmittance-reflectance ratios (N-1):1, ..., 1:1.
SymplecticOp nport_distributor(int n_modes);

/// Two-mode passive mixer. With amplitude transmittance t (r = sqrt(1 - t^2)):
///   out_a = r in_a + t in_b,  out_b = -t in_a + r in_b
/// for both quadratures, so t = 1 routes all of in_a into out_b.
SymplecticOp beam_splitter(double transmittance, int mode_a, int mode_b, int n_modes);

/// diag(a^{-1/2}, a^{1/2}) on `mode`: x-variance scales by 1/a, p-variance by a.
SymplecticOp local_squeezer(double a, int mode, int n_modes);

/// x_anc -> x_anc + g x_sig, p_sig -> p_sig - g p_anc.
SymplecticOp qnd_gate(double g, int signal, int ancilla, int n_modes);

/// gamma + noise for a symmetric positive semidefinite `noise`.
CovarianceMatrix add_noise(const CovarianceMatrix& gamma, const Matrix& noise);

/// Appends modes in the state `extra` (block-diagonal direct sum).
CovarianceMatrix direct_sum(const CovarianceMatrix& first, const CovarianceMatrix& second);

/// Reorders modes: output mode k is input mode order[k].
CovarianceMatrix permute_modes(const CovarianceMatrix& gamma, std::span<const int> order);

/// Covariance of the remaining modes after an ideal homodyne measurement of
/// `quadrature` on `mode`: A - C (Pi B Pi)^+ C^T.
CovarianceMatrix homodyne_condition(const CovarianceMatrix& gamma, int mode, Quadrature quadrature);

/// gamma + i Omega >= 0, tested through the real embedding
/// [[gamma, -Omega], [Omega, gamma]] with the is_psd tolerance.
bool is_physical(const CovarianceMatrix& gamma, double tol = 1e-9);

/// Lambda gamma Lambda with Lambda = diag(1, -1) on every listed mode.
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, std::span<const int> modes);

/// Symplectic eigenvalues in ascending order. Computed from the symmetric
/// matrix -M^2 with M = gamma^{1/2} Omega gamma^{1/2}, whose eigenvalues are
/// the squared symplectic eigenvalues, each appearing twice.
Vector symplectic_spectrum(const CovarianceMatrix& gamma);

}  // namespace gslocc
