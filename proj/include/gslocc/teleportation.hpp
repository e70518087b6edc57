#pragma once

// Assisted teleportation of coherent states with a symmetric tripartite
// resource: Alice (mode A) runs the Bell measurement, Charlie (mode C) mixes
// his mode with vacuum on a beam splitter of intensity transmittance T and
// measures x on one output and p on the other, Bob (mode B) corrects.
//
// Gain convention is fixed to R = diag(-1, 1), i.e. Alice measures
// x_in - x_A and p_in + x_A. It requires c > 0 and d > 0; other states are
// rejected rather than rotated.
//
// Squeezing in this module follows the noise protocol: a factor a divides
// the x-variances and multiplies the p-variances. Decibels are 10 log10(a).

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "gslocc/protocols.hpp"
#include "gslocc/symmetric_state.hpp"

namespace gslocc {

struct CharlieSetup {
  double transmittance_sq = 1.0;  ///< T = t^2; reflectance r^2 = 1 - T

  void validate() const;
};

struct ConditionedBlocks {
  Eigen::Matrix2d a;
  Eigen::Matrix2d b;
  Eigen::Matrix2d c;
};

struct FidelityReport {
  double fidelity;
  double det_e;
  ConditionedBlocks blocks;
};

/// Closed-form covariance of A and B after Charlie's measurement.
ConditionedBlocks conditioned_ab(const SymmetricState& s, const CharlieSetup& setup);

/// Same blocks through explicit conditioning: append vacuum D, mix C and D,
/// measure x on C and p on D.
ConditionedBlocks conditioned_ab_generic(const SymmetricState& s, const CharlieSetup& setup);

/// F = 2 / sqrt(det E), E = 2I + R A R^T + R C + C^T R^T + B.
FidelityReport fidelity(const SymmetricState& s, const CharlieSetup& setup);

/// T = 1 optimum: F = 1 / sqrt((m - c + 1)(n - d + 1 - 2 d^2 / n)).
double fidelity_closed(const SymmetricState& s);

/// The expression under the square root in fidelity_closed.
double fidelity_cost(const SymmetricState& s);

/// Two-party resource: F = 1 / sqrt((m - c + 1)(n - d + 1)).
double bipartite_fidelity(const SymmetricState& s);

/// Local squeezing by a on every mode (x / a, p * a).
EffectiveScheme squeeze(const EffectiveScheme& e, double a);

/// a_opt = sqrt(V_x (2 V_p + W_p) / (3 V_p W_p)), tripartite only.
double optimal_squeezing(const EffectiveScheme& e);

/// Minimizer of fidelity_cost over a by golden-section search on log a,
/// bracket [1e-4, 1e4] widened while the minimum sits on an edge.
double optimal_squeezing_numeric(const SymmetricState& s);

inline double to_db(double a) { return 10.0 * std::log10(a); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

struct CurvePoint {
  double x;         ///< a or g
  double fidelity;  ///< NaN when the transformed state violates c, d > 0
  double squeezing; ///< squeezing used at this point
  bool valid;
};

struct FidelityCurve {
  SymmetricState state;
  double baseline;  ///< F of the untransformed state
  std::vector<CurvePoint> points;
};

FidelityCurve fidelity_vs_squeezing(const SymmetricState& s, const std::vector<double>& a_grid);

struct FixedSqueezing {
  double a = 1.0;
};
struct OptimalSqueezing {};
using SqueezingMode = std::variant<FixedSqueezing, OptimalSqueezing>;

/// QND measurement at strength g (plan (g^2, 1)) followed by squeezing,
/// fixed or optimized per g.
FidelityCurve fidelity_vs_g(const SymmetricState& s, const std::vector<double>& g_grid, const SqueezingMode& mode);

/// State after QND at strength g and squeezing by a.
SymmetricState qnd_then_squeeze(const SymmetricState& s, double g, double a);

}  // namespace gslocc
