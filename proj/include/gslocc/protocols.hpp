#pragma once

// Gaussian LOCC protocols that keep a symmetric state symmetric while
// steering its ratios k1 = n/m and k2 = d/c to prescribed targets.
//
//  * Correlated noise: every party adds the same Gaussian displacement
//    noise (covariance blocks diag(V_N, 0) everywhere), then squeezes its
//    mode by a = e^{2r}. In the preparation picture this adds N V_N to W_x.
//  * Partial QND: every party couples its mode to a vacuum ancilla with
//    strength g, the ancillas' x quadratures are measured and announced,
//    displacements are fed forward, and every mode is squeezed.
//
// Plans carry a_sq = a^2, the quantity the solutions are linear in.

#include <string_view>
#include <variant>
#include <vector>

#include "gslocc/symmetric_state.hpp"

namespace gslocc {

struct TargetRatios {
  double k1 = 1.0;  ///< n'/m'
  double k2 = 1.0;  ///< d'/c'

  /// Throws unless both ratios are finite and positive.
  void validate() const;
};

struct NoisePlan {
  double a_sq = 1.0;
  double v_noise = 0.0;
  /// Quadrature receiving the correlated noise. For p the roles of the
  /// quadratures are exchanged: the noise enters p and the squeezer divides
  /// the p-variance by a.
  Quadrature quadrature = Quadrature::x;
};

struct QndPlan {
  double g_sq = 0.0;
  double a_sq = 1.0;
};

enum class NotTransformableReason { negative_noise, nonpositive_squeezing, no_real_root, degenerate_input };

std::string_view to_string(NotTransformableReason reason);

struct NotTransformable {
  NotTransformableReason reason;
};

using PlanOutcome = std::variant<NoisePlan, QndPlan, NotTransformable>;

inline bool is_transformable(const PlanOutcome& outcome) {
  return !std::holds_alternative<NotTransformable>(outcome);
}

/// Closed-form noise plan:
///   a^2 = k1' k2' (m - c) / (k2' n - k1' d),
///   V_N = (k1' m d - k2' n c) / (k2' n - k1' d).
/// Transformable iff a^2 > 0 and V_N >= 0 (V_N within rounding of zero is
/// clamped to zero). c = 0, or a vanishing denominator, is degenerate.
/// Throws std::invalid_argument for unphysical input.
PlanOutcome plan_noise(const SymmetricState& s, const TargetRatios& t, Quadrature quadrature = Quadrature::x);

/// Preparation-picture effect of a noise plan:
///   V_x -> V_x/a, V_p -> a V_p, W_x -> (W_x + N V_N)/a, W_p -> a W_p.
EffectiveScheme apply_noise(const EffectiveScheme& e, const NoisePlan& p);

/// Candidate QND solution before the admissibility filter.
struct QndRoot {
  double g_sq;
  double a_sq;
  bool admissible;
};

/// All real roots u = g^2 of the cubic obtained by eliminating a^2 from
///   pi_x delta_p u^2 + sigma_x delta_p u + k2' delta_x a^2 = -delta_p,
///   N pi_x u^3 + (N sigma_x + pi_x nu_p) u^2 + (N + sigma_x nu_p) u
///     - N k1' pi_x u a^2 - k1' nu_x a^2 = -nu_p,
/// with a^2 recovered from the first relation. Admissible roots have
/// u >= -1e-12 (clamped to 0) and a^2 > 0.
std::vector<QndRoot> qnd_roots(const SymmetricState& s, const TargetRatios& t);

/// Minimal admissible root of qnd_roots, or NotTransformable.
PlanOutcome plan_qnd(const SymmetricState& s, const TargetRatios& t);

/// Preparation-picture effect of a QND plan (same map on V and W):
///   V_x -> a V_x / (1 + g^2 V_x), V_p -> (V_p + g^2)/a.
EffectiveScheme apply_qnd(const EffectiveScheme& e, const QndPlan& p);

using ProtocolPlan = std::variant<NoisePlan, QndPlan>;

/// Scalar route: from_effective(apply_*(to_effective(s), plan)).
SymmetricState apply_protocol(const SymmetricState& s, const ProtocolPlan& plan);

/// Runs the protocol on the full 2N x 2N matrix with explicit noise
/// matrices, QND gates on appended vacuum ancillas, homodyne conditioning
/// and local squeezers.
CovarianceMatrix apply_protocol_full(const CovarianceMatrix& gamma, const ProtocolPlan& plan);

}  // namespace gslocc
