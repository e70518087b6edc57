#include "gslocc/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gslocc {

namespace {

void require_mode(int mode, int n_modes, const char* what) {
  if (mode < 0 || mode >= n_modes) {
    throw std::out_of_range(std::string(what) + ": mode index " + std::to_string(mode) +
                            " outside [0, " + std::to_string(n_modes) + ")");
  }
}

void require_square_even(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": expected a nonempty 2N x 2N matrix");
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square_even(entries_, "CovarianceMatrix");
  if (!entries_.allFinite()) {
    throw std::invalid_argument("CovarianceMatrix: non-finite entry");
  }
  if (!is_symmetric(entries_, 1e-12)) {
    throw std::invalid_argument("CovarianceMatrix: matrix is not symmetric");
  }
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("vacuum: n_modes must be positive");
  return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::Matrix2d CovarianceMatrix::block(int i, int j) const {
  require_mode(i, n_modes(), "CovarianceMatrix::block");
  require_mode(j, n_modes(), "CovarianceMatrix::block");
  return entries_.block<2, 2>(2 * i, 2 * j);
}

SymplecticForm::SymplecticForm(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("make_omega: n_modes must be positive");
  entries_ = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    entries_(2 * k, 2 * k + 1) = 1.0;
    entries_(2 * k + 1, 2 * k) = -1.0;
  }
}

SymplecticForm make_omega(int n_modes) { return SymplecticForm(n_modes); }

double symplectic_defect(const Matrix& s) {
  const Matrix omega = make_omega(static_cast<int>(s.rows() / 2)).matrix();
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticOp::SymplecticOp(Matrix entries) : entries_(std::move(entries)) {
  require_square_even(entries_, "SymplecticOp");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if (!entries_.allFinite() || symplectic_defect(entries_) > 1e-10 * scale * scale) {
    throw std::invalid_argument("SymplecticOp: matrix does not preserve the symplectic form");
  }
}

SymplecticOp SymplecticOp::identity(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("SymplecticOp::identity: n_modes must be positive");
  return SymplecticOp(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticOp operator*(const SymplecticOp& a, const SymplecticOp& b) {
  if (a.n_modes() != b.n_modes()) {
    throw std::invalid_argument("SymplecticOp composition: mode count mismatch");
  }
  return SymplecticOp(a.entries_ * b.entries_);
}

CovarianceMatrix apply_symplectic(const SymplecticOp& s, const CovarianceMatrix& gamma) {
  if (s.n_modes() != gamma.n_modes()) {
    throw std::invalid_argument("apply_symplectic: mode count mismatch");
  }
  Matrix out = s.matrix() * gamma.matrix() * s.matrix().transpose();
  return CovarianceMatrix(0.5 * (out + out.transpose()));
}

SymplecticOp nport_distributor(int n_modes) {
  if (n_modes < 2) throw std::invalid_argument("nport_distributor: needs at least two modes");
  const int n = n_modes;
  // Step j moves amplitude 1/sqrt(N) from the carrier (last mode) into mode j,
  // a splitter with transmittance-reflectance ratio (N-j):1.
  Matrix o = Matrix::Identity(n, n);
  for (int j = 0; j < n - 1; ++j) {
    const double remaining = static_cast<double>(n - j);
    const double c = std::sqrt((remaining - 1.0) / remaining);
    const double s = 1.0 / std::sqrt(remaining);
    Matrix g = Matrix::Identity(n, n);
    g(j, j) = c;
    g(j, n - 1) = s;
    g(n - 1, j) = -s;
    g(n - 1, n - 1) = c;
    o = g * o;
  }

  Matrix b = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      b(2 * i, 2 * k) = o(i, k);
      b(2 * i + 1, 2 * k + 1) = o(i, k);
    }
  }
  return SymplecticOp(std::move(b));
}

SymplecticOp beam_splitter(double transmittance, int mode_a, int mode_b, int n_modes) {
  require_mode(mode_a, n_modes, "beam_splitter");
  require_mode(mode_b, n_modes, "beam_splitter");
  if (mode_a == mode_b) throw std::invalid_argument("beam_splitter: modes must differ");
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("beam_splitter: transmittance outside [0, 1]");
  }
  const double t = transmittance;
  const double r = std::sqrt(1.0 - t * t);
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int q = 0; q < 2; ++q) {
    const int a = 2 * mode_a + q;
    const int b = 2 * mode_b + q;
    s(a, a) = r;
    s(a, b) = t;
    s(b, a) = -t;
    s(b, b) = r;
  }
  return SymplecticOp(std::move(s));
}

SymplecticOp local_squeezer(double a, int mode, int n_modes) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("local_squeezer: squeezing factor must be positive");
  }
  require_mode(mode, n_modes, "local_squeezer");
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  s(2 * mode, 2 * mode) = 1.0 / std::sqrt(a);
  s(2 * mode + 1, 2 * mode + 1) = std::sqrt(a);
  return SymplecticOp(std::move(s));
}

SymplecticOp qnd_gate(double g, int signal, int ancilla, int n_modes) {
  require_mode(signal, n_modes, "qnd_gate");
  require_mode(ancilla, n_modes, "qnd_gate");
  if (signal == ancilla) throw std::invalid_argument("qnd_gate: signal and ancilla must differ");
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  s(2 * ancilla, 2 * signal) = g;
  s(2 * signal + 1, 2 * ancilla + 1) = -g;
  return SymplecticOp(std::move(s));
}

CovarianceMatrix add_noise(const CovarianceMatrix& gamma, const Matrix& noise) {
  if (noise.rows() != gamma.matrix().rows() || noise.cols() != gamma.matrix().cols()) {
    throw std::invalid_argument("add_noise: dimension mismatch");
  }
  if (!is_symmetric(noise) || !is_psd(noise)) {
    throw std::invalid_argument("add_noise: noise matrix must be symmetric positive semidefinite");
  }
  return CovarianceMatrix(gamma.matrix() + noise);
}

CovarianceMatrix direct_sum(const CovarianceMatrix& first, const CovarianceMatrix& second) {
  const auto n1 = first.matrix().rows();
  const auto n2 = second.matrix().rows();
  Matrix out = Matrix::Zero(n1 + n2, n1 + n2);
  out.topLeftCorner(n1, n1) = first.matrix();
  out.bottomRightCorner(n2, n2) = second.matrix();
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix permute_modes(const CovarianceMatrix& gamma, std::span<const int> order) {
  const int n = gamma.n_modes();
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("permute_modes: order must list every mode once");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int k : order) {
    require_mode(k, n, "permute_modes");
    if (seen[static_cast<std::size_t>(k)]) throw std::invalid_argument("permute_modes: repeated mode");
    seen[static_cast<std::size_t>(k)] = true;
  }
  Matrix out(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = gamma.matrix().block<2, 2>(2 * order[i], 2 * order[j]);
    }
  }
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix homodyne_condition(const CovarianceMatrix& gamma, int mode, Quadrature quadrature) {
  const int n = gamma.n_modes();
  require_mode(mode, n, "homodyne_condition");
  if (n < 2) throw std::invalid_argument("homodyne_condition: no modes would remain");

  std::vector<int> kept;
  kept.reserve(static_cast<std::size_t>(2 * (n - 1)));
  for (int i = 0; i < 2 * n; ++i) {
    if (i / 2 != mode) kept.push_back(i);
  }
  const int measured = 2 * mode + (quadrature == Quadrature::x ? 0 : 1);
  const double variance = gamma(measured, measured);
  if (!(variance > 0.0)) {
    throw std::invalid_argument("homodyne_condition: measured variance is not positive");
  }

  const auto m = static_cast<Eigen::Index>(kept.size());
  Matrix out(m, m);
  Vector cross(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    cross(i) = gamma(kept[i], measured);
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = gamma(kept[i], kept[j]);
  }
  // (Pi B Pi)^+ has the single nonzero entry 1/variance.
  out -= cross * cross.transpose() / variance;
  return CovarianceMatrix(0.5 * (out + out.transpose()));
}

bool is_physical(const CovarianceMatrix& gamma, double tol) {
  const Matrix& g = gamma.matrix();
  if (!g.allFinite()) return false;
  const Matrix omega = make_omega(gamma.n_modes()).matrix();
  const auto d = g.rows();
  Matrix embedding(2 * d, 2 * d);
  embedding << g, -omega, omega, g;
  return is_psd(embedding, tol);
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, std::span<const int> modes) {
  const int n = gamma.n_modes();
  if (modes.empty()) throw std::invalid_argument("partial_transpose: empty mode set");
  Vector lambda = Vector::Ones(2 * n);
  for (int k : modes) {
    require_mode(k, n, "partial_transpose");
    if (lambda(2 * k + 1) < 0.0) throw std::invalid_argument("partial_transpose: repeated mode");
    lambda(2 * k + 1) = -1.0;
  }
  return CovarianceMatrix(lambda.asDiagonal() * gamma.matrix() * lambda.asDiagonal());
}

Vector symplectic_spectrum(const CovarianceMatrix& gamma) {
  const Matrix& g = gamma.matrix();
  const SymmetricEigen eig = jacobi_eigen(g);
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  if (!(eig.values(0) > 1e-14 * scale)) {
    throw std::invalid_argument("symplectic_spectrum: covariance matrix is not positive definite");
  }
  const Matrix root = eig.vectors * eig.values.cwiseSqrt().asDiagonal() * eig.vectors.transpose();
  const Matrix m = root * make_omega(gamma.n_modes()).matrix() * root;
  const Vector squares = jacobi_eigen(m.transpose() * m).values;

  const int n = gamma.n_modes();
  Vector out(n);
  for (int k = 0; k < n; ++k) {
    // Eigenvalues come in degenerate pairs; average each pair.
    const double pair = 0.5 * (squares(2 * k) + squares(2 * k + 1));
    out(k) = std::sqrt(std::max(pair, 0.0));
  }
  return out;
}

}  // namespace gslocc
