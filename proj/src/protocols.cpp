#include "gslocc/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "gslocc/cubic.hpp"

namespace gslocc {

namespace {

constexpr double kRoundoff = 1e-12;

void require_physical(const SymmetricState& s, const char* what) {
  if (!is_physical(build_cm(s))) throw std::invalid_argument(std::string(what) + ": input state is unphysical");
}

// Exchanges the roles of x and p: (m, n, c, d) -> (n, m, -d, -c), which
// swaps (V_x, W_x) with (V_p, W_p).
SymmetricState mirror(const SymmetricState& s) { return {s.n_parties, s.n, s.m, -s.d, -s.c}; }

EffectiveScheme mirror(const EffectiveScheme& e) { return {e.n_parties, e.vp, e.vx, e.wp, e.wx}; }

PlanOutcome plan_noise_x(const SymmetricState& s, const TargetRatios& t) {
  const double scale_c = std::max(1.0, std::abs(s.m));
  if (std::abs(s.c) <= kRoundoff * scale_c) return NotTransformable{NotTransformableReason::degenerate_input};

  const double denominator = t.k2 * s.n - t.k1 * s.d;
  const double scale_den = std::max(1.0, std::abs(t.k2 * s.n) + std::abs(t.k1 * s.d));
  if (std::abs(denominator) <= kRoundoff * scale_den) {
    return NotTransformable{NotTransformableReason::degenerate_input};
  }

  const double a_sq = t.k1 * t.k2 * (s.m - s.c) / denominator;
  if (!(a_sq > 0.0)) return NotTransformable{NotTransformableReason::nonpositive_squeezing};

  const double numerator = t.k1 * s.m * s.d - t.k2 * s.n * s.c;
  const double scale_num = std::max(1.0, std::abs(t.k1 * s.m * s.d) + std::abs(t.k2 * s.n * s.c));
  if (numerator < 0.0) {
    if (numerator < -kRoundoff * scale_num) return NotTransformable{NotTransformableReason::negative_noise};
    return NoisePlan{a_sq, 0.0, Quadrature::x};
  }
  return NoisePlan{a_sq, numerator / denominator, Quadrature::x};
}

double polynomial_p(double u, double sigma_x, double pi_x) { return 1.0 + sigma_x * u + pi_x * u * u; }

}  // namespace

void TargetRatios::validate() const {
  if (!(std::isfinite(k1) && std::isfinite(k2) && k1 > 0.0 && k2 > 0.0)) {
    throw std::invalid_argument("target ratios must be finite and positive");
  }
}

std::string_view to_string(NotTransformableReason reason) {
  switch (reason) {
    case NotTransformableReason::negative_noise:
      return "negative-noise";
    case NotTransformableReason::nonpositive_squeezing:
      return "nonpositive-squeezing";
    case NotTransformableReason::no_real_root:
      return "no-real-root";
    case NotTransformableReason::degenerate_input:
      return "degenerate-input";
  }
  return "unknown";
}

PlanOutcome plan_noise(const SymmetricState& s, const TargetRatios& t, Quadrature quadrature) {
  t.validate();
  require_physical(s, "plan_noise");
  if (quadrature == Quadrature::x) return plan_noise_x(s, t);

  PlanOutcome mirrored = plan_noise_x(mirror(s), TargetRatios{1.0 / t.k1, 1.0 / t.k2});
  if (auto* plan = std::get_if<NoisePlan>(&mirrored)) plan->quadrature = Quadrature::p;
  return mirrored;
}

EffectiveScheme apply_noise(const EffectiveScheme& e, const NoisePlan& p) {
  if (!(p.a_sq > 0.0) || !(p.v_noise >= 0.0)) throw std::invalid_argument("apply_noise: invalid plan");
  if (p.quadrature == Quadrature::p) {
    return mirror(apply_noise(mirror(e), NoisePlan{p.a_sq, p.v_noise, Quadrature::x}));
  }
  const double a = std::sqrt(p.a_sq);
  return {e.n_parties, e.vx / a, a * e.vp, (e.wx + e.n_parties * p.v_noise) / a, a * e.wp};
}

std::vector<QndRoot> qnd_roots(const SymmetricState& s, const TargetRatios& t) {
  t.validate();
  require_physical(s, "qnd_roots");
  const EffectiveScheme e = to_effective(s);
  const double n = e.n_parties;
  const double delta_x = e.vx - e.wx;
  const double delta_p = e.vp - e.wp;
  const double nu_x = (n - 1.0) * e.vx + e.wx;
  const double nu_p = (n - 1.0) * e.vp + e.wp;
  const double pi_x = e.vx * e.wx;
  const double sigma_x = e.vx + e.wx;

  if (std::abs(delta_x) <= kRoundoff * std::max(1.0, sigma_x)) {
    throw std::invalid_argument("qnd_roots: degenerate input (c = 0)");
  }

  // k2' delta_x * (second relation) + k1' delta_p * P(u) * (N pi_x u + nu_x)
  // with P(u) = 1 + sigma_x u + pi_x u^2.
  const double lhs = t.k2 * delta_x;
  const double rhs = t.k1 * delta_p;
  const double c3 = lhs * n * pi_x + rhs * n * pi_x * pi_x;
  const double c2 = lhs * (n * sigma_x + pi_x * nu_p) + rhs * (pi_x * nu_x + n * sigma_x * pi_x);
  const double c1 = lhs * (n + sigma_x * nu_p) + rhs * (sigma_x * nu_x + n * pi_x);
  const double c0 = lhs * nu_p + rhs * nu_x;

  std::vector<QndRoot> out;
  for (double u : solve_cubic(c3, c2, c1, c0)) {
    bool admissible = u >= -kRoundoff;
    if (admissible) u = std::max(u, 0.0);
    const double a_sq = -delta_p * polynomial_p(u, sigma_x, pi_x) / (t.k2 * delta_x);
    admissible = admissible && a_sq > 0.0 && std::isfinite(a_sq);
    out.push_back({u, a_sq, admissible});
  }
  return out;
}

PlanOutcome plan_qnd(const SymmetricState& s, const TargetRatios& t) {
  t.validate();
  require_physical(s, "plan_qnd");
  if (std::abs(s.c) <= kRoundoff * std::max(1.0, std::abs(s.m))) {
    return NotTransformable{NotTransformableReason::degenerate_input};
  }
  const std::vector<QndRoot> roots = qnd_roots(s, t);
  bool any_nonnegative = false;
  for (const QndRoot& root : roots) {
    if (root.admissible) return QndPlan{root.g_sq, root.a_sq};
    any_nonnegative = any_nonnegative || root.g_sq >= 0.0;
  }
  return NotTransformable{any_nonnegative ? NotTransformableReason::nonpositive_squeezing
                                          : NotTransformableReason::no_real_root};
}

EffectiveScheme apply_qnd(const EffectiveScheme& e, const QndPlan& p) {
  if (!(p.g_sq >= 0.0) || !(p.a_sq > 0.0)) throw std::invalid_argument("apply_qnd: invalid plan");
  const double a = std::sqrt(p.a_sq);
  const double u = p.g_sq;
  return {e.n_parties, a * e.vx / (1.0 + u * e.vx), (e.vp + u) / a, a * e.wx / (1.0 + u * e.wx), (e.wp + u) / a};
}

SymmetricState apply_protocol(const SymmetricState& s, const ProtocolPlan& plan) {
  const EffectiveScheme e = to_effective(s);
  return std::visit(
      [&e](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, NoisePlan>) {
          return from_effective(apply_noise(e, p));
        } else {
          return from_effective(apply_qnd(e, p));
        }
      },
      plan);
}

CovarianceMatrix apply_protocol_full(const CovarianceMatrix& gamma, const ProtocolPlan& plan) {
  const int n = gamma.n_modes();
  if (const auto* noise = std::get_if<NoisePlan>(&plan)) {
    if (!(noise->a_sq > 0.0) || !(noise->v_noise >= 0.0)) {
      throw std::invalid_argument("apply_protocol_full: invalid noise plan");
    }
    const int offset = noise->quadrature == Quadrature::x ? 0 : 1;
    Matrix correlated = Matrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) correlated(2 * i + offset, 2 * j + offset) = noise->v_noise;
    }
    CovarianceMatrix out = add_noise(gamma, correlated);
    const double a = std::sqrt(noise->a_sq);
    const double factor = noise->quadrature == Quadrature::x ? a : 1.0 / a;
    for (int i = 0; i < n; ++i) out = apply_symplectic(local_squeezer(factor, i, n), out);
    return out;
  }

  const auto& qnd = std::get<QndPlan>(plan);
  if (!(qnd.g_sq >= 0.0) || !(qnd.a_sq > 0.0)) throw std::invalid_argument("apply_protocol_full: invalid QND plan");
  const double g = std::sqrt(qnd.g_sq);
  CovarianceMatrix joint = direct_sum(gamma, CovarianceMatrix::vacuum(n));
  SymplecticOp coupling = SymplecticOp::identity(2 * n);
  for (int i = 0; i < n; ++i) coupling = qnd_gate(g, i, n + i, 2 * n) * coupling;
  joint = apply_symplectic(coupling, joint);
  for (int ancilla = 2 * n - 1; ancilla >= n; --ancilla) {
    joint = homodyne_condition(joint, ancilla, Quadrature::x);
  }
  const double a = std::sqrt(qnd.a_sq);
  for (int i = 0; i < n; ++i) joint = apply_symplectic(local_squeezer(1.0 / a, i, n), joint);
  return joint;
}

}  // namespace gslocc
