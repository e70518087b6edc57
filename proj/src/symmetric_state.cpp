#include "gslocc/symmetric_state.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace gslocc {

namespace {

void require_parties(int n_parties) {
  if (n_parties < 2) {
    throw std::invalid_argument("symmetric state needs at least two parties, got " + std::to_string(n_parties));
  }
}

}  // namespace

std::optional<double> SymmetricState::k2() const {
  if (c == 0.0) return std::nullopt;
  return d / c;
}

EffectiveScheme to_effective(const SymmetricState& s) {
  require_parties(s.n_parties);
  const double k = s.n_parties - 1;
  return {s.n_parties, s.m - s.c, s.n + s.d, s.m + k * s.c, s.n - k * s.d};
}

SymmetricState from_effective(const EffectiveScheme& e) {
  require_parties(e.n_parties);
  if (!(e.vx > 0.0 && e.vp > 0.0 && e.wx > 0.0 && e.wp > 0.0)) {
    throw std::invalid_argument("from_effective: variances must be positive");
  }
  const double n = e.n_parties;
  return {e.n_parties, ((n - 1.0) * e.vx + e.wx) / n, ((n - 1.0) * e.vp + e.wp) / n, (e.wx - e.vx) / n,
          (e.vp - e.wp) / n};
}

EffectiveScheme effective_from_thermal(int n_parties, double n1, double r1, double n_last, double r_last) {
  require_parties(n_parties);
  if (!(n1 > 0.0 && n_last > 0.0)) {
    throw std::invalid_argument("effective_from_thermal: thermal factors must be positive");
  }
  return {n_parties, n1 * std::exp(2.0 * r1), n1 * std::exp(-2.0 * r1), n_last * std::exp(2.0 * r_last),
          n_last * std::exp(-2.0 * r_last)};
}

CovarianceMatrix build_cm(const SymmetricState& s) {
  require_parties(s.n_parties);
  const int n = s.n_parties;
  Matrix g = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        g(2 * i, 2 * i) = s.m;
        g(2 * i + 1, 2 * i + 1) = s.n;
      } else {
        g(2 * i, 2 * j) = s.c;
        g(2 * i + 1, 2 * j + 1) = -s.d;
      }
    }
  }
  return CovarianceMatrix(std::move(g));
}

CovarianceMatrix input_cm(const EffectiveScheme& e) {
  require_parties(e.n_parties);
  Vector diag(2 * e.n_parties);
  for (int j = 0; j < e.n_parties - 1; ++j) {
    diag(2 * j) = e.vx;
    diag(2 * j + 1) = e.vp;
  }
  diag(2 * e.n_parties - 2) = e.wx;
  diag(2 * e.n_parties - 1) = e.wp;
  return CovarianceMatrix(diag.asDiagonal());
}

bool is_physical(const SymmetricState& s, double tol) {
  const EffectiveScheme e = to_effective(s);
  if (!(e.vx > 0.0 && e.vp > 0.0 && e.wx > 0.0 && e.wp > 0.0)) return false;
  return e.vx * e.vp >= 1.0 - tol && e.wx * e.wp >= 1.0 - tol;
}

SymmetricState symmetric_from_cm(const CovarianceMatrix& gamma, double tol) {
  const int n = gamma.n_modes();
  require_parties(n);
  const Eigen::Matrix2d diag = gamma.block(0, 0);
  const Eigen::Matrix2d off = gamma.block(0, 1);
  SymmetricState s{n, diag(0, 0), diag(1, 1), off(0, 0), -off(1, 1)};
  const Matrix expected = build_cm(s).matrix();
  const double scale = std::max(1.0, gamma.matrix().cwiseAbs().maxCoeff());
  if ((expected - gamma.matrix()).cwiseAbs().maxCoeff() > tol * scale) {
    throw std::invalid_argument("symmetric_from_cm: matrix is not a canonical permutation-invariant state");
  }
  return s;
}

std::vector<SymmetricState> sample_physical(double m, double n, int n_parties, int count, std::uint64_t seed) {
  require_parties(n_parties);
  if (count < 0) throw std::invalid_argument("sample_physical: negative count");
  if (!(m > 0.0 && n > 0.0)) throw std::invalid_argument("sample_physical: variances must be positive");
  // m n >= 1 is necessary; equality pins the state to c = d = 0.
  const double product = m * n;
  if (product < 1.0 - 1e-12) throw std::invalid_argument("sample_physical: no physical state has m n < 1");
  std::vector<SymmetricState> out;
  out.reserve(static_cast<std::size_t>(count));
  if (product <= 1.0 + 1e-12) {
    out.assign(static_cast<std::size_t>(count), SymmetricState{n_parties, m, n, 0.0, 0.0});
    return out;
  }

  const double k = n_parties - 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c_dist(-m / k, m);
  std::uniform_real_distribution<double> d_dist(-n, n / k);
  const long max_attempts = 100000L * std::max(count, 1);
  for (long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < count; ++attempt) {
    const SymmetricState s{n_parties, m, n, c_dist(rng), d_dist(rng)};
    if (is_physical(s, 0.0)) out.push_back(s);
  }
  if (static_cast<int>(out.size()) < count) {
    throw std::runtime_error("sample_physical: physical region too small for rejection sampling");
  }
  return out;
}

}  // namespace gslocc
