#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gslocc/symplectic.hpp"

namespace gslocc {

/// Permutation-invariant N-party Gaussian state in canonical form: every
/// diagonal block is diag(m, n), every off-diagonal block diag(c, -d).
struct SymmetricState {
  int n_parties = 3;
  double m = 1.0;
  double n = 1.0;
  double c = 0.0;
  double d = 0.0;

  double k1() const { return n / m; }
  /// d/c, absent when c == 0.
  std::optional<double> k2() const;

  friend bool operator==(const SymmetricState&, const SymmetricState&) = default;
};

/// Preparation picture: N-1 identical modes with variances (vx, vp) and one
/// mode with (wx, wp), mixed on nport_distributor(N).
struct EffectiveScheme {
  int n_parties = 3;
  double vx = 1.0;
  double vp = 1.0;
  double wx = 1.0;
  double wp = 1.0;

  friend bool operator==(const EffectiveScheme&, const EffectiveScheme&) = default;
};

EffectiveScheme to_effective(const SymmetricState& s);

/// Throws std::invalid_argument for non-positive variances.
SymmetricState from_effective(const EffectiveScheme& e);

/// Thermal squeezed inputs: vx = n1 e^{2 r1}, vp = n1 e^{-2 r1}, and the same
/// for the distinguished mode with (nN, rN).
EffectiveScheme effective_from_thermal(int n_parties, double n1, double r1, double n_last, double r_last);

/// Block layout of the 2N x 2N covariance matrix.
CovarianceMatrix build_cm(const SymmetricState& s);

/// gamma_in = (+)_{j<N} diag(vx, vp) (+) diag(wx, wp).
CovarianceMatrix input_cm(const EffectiveScheme& e);

/// Closed-form physicality: vx vp >= 1 and wx wp >= 1 (positive variances).
bool is_physical(const SymmetricState& s, double tol = 1e-9);

/// Reads (m, n, c, d) back from the blocks of a permutation-invariant CM.
/// Throws if the matrix is not of the canonical symmetric form to `tol`.
SymmetricState symmetric_from_cm(const CovarianceMatrix& gamma, double tol = 1e-9);

/// Deterministic draws of (c, d) for fixed (m, n): uniform over the
/// rectangle of positive effective variances, then rejection-filtered on
/// physicality. Throws when the region is empty.
std::vector<SymmetricState> sample_physical(double m, double n, int n_parties, int count, std::uint64_t seed);

}  // namespace gslocc
