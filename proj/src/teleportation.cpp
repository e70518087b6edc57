#include "gslocc/teleportation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gslocc {

namespace {

void require_convention(const SymmetricState& s, int parties, const char* what) {
  if (s.n_parties != parties) {
    throw std::invalid_argument(std::string(what) + ": expects " + std::to_string(parties) + " parties");
  }
  if (!(s.c > 0.0 && s.d > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": gain convention R = diag(-1, 1) needs c > 0 and d > 0");
  }
  if (!is_physical(s)) throw std::invalid_argument(std::string(what) + ": input state is unphysical");
}

// Golden-section minimum of f on [lo, hi].
template <typename F>
double golden_minimum(F&& f, double lo, double hi, double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void CharlieSetup::validate() const {
  if (!(transmittance_sq >= 0.0 && transmittance_sq <= 1.0)) {
    throw std::invalid_argument("CharlieSetup: transmittance must lie in [0, 1]");
  }
}

ConditionedBlocks conditioned_ab(const SymmetricState& s, const CharlieSetup& setup) {
  setup.validate();
  if (s.n_parties != 3) throw std::invalid_argument("conditioned_ab: expects 3 parties");
  if (!is_physical(s)) throw std::invalid_argument("conditioned_ab: input state is unphysical");
  const double t2 = setup.transmittance_sq;
  const double r2 = 1.0 - t2;
  const double x_shift = s.c * s.c * r2 / (s.m * r2 + t2);
  const double p_shift = s.d * s.d * t2 / (s.n * t2 + r2);
  ConditionedBlocks out;
  out.a = Eigen::Vector2d(s.m - x_shift, s.n - p_shift).asDiagonal();
  out.b = out.a;
  out.c = Eigen::Vector2d(s.c - x_shift, -s.d - p_shift).asDiagonal();
  return out;
}

ConditionedBlocks conditioned_ab_generic(const SymmetricState& s, const CharlieSetup& setup) {
  setup.validate();
  if (s.n_parties != 3) throw std::invalid_argument("conditioned_ab_generic: expects 3 parties");
  const CovarianceMatrix abc = build_cm(s);
  if (!is_physical(abc)) throw std::invalid_argument("conditioned_ab_generic: input state is unphysical");
  CovarianceMatrix joint = direct_sum(abc, CovarianceMatrix::vacuum(1));
  joint = apply_symplectic(beam_splitter(std::sqrt(setup.transmittance_sq), 2, 3, 4), joint);
  joint = homodyne_condition(joint, 2, Quadrature::x);
  joint = homodyne_condition(joint, 2, Quadrature::p);
  return {joint.block(0, 0), joint.block(1, 1), joint.block(0, 1)};
}

FidelityReport fidelity(const SymmetricState& s, const CharlieSetup& setup) {
  require_convention(s, 3, "fidelity");
  const ConditionedBlocks blocks = conditioned_ab(s, setup);
  const Eigen::Matrix2d r = Eigen::Vector2d(-1.0, 1.0).asDiagonal();
  const Eigen::Matrix2d e = 2.0 * Eigen::Matrix2d::Identity() + r * blocks.a * r.transpose() + r * blocks.c +
                            blocks.c.transpose() * r.transpose() + blocks.b;
  const double det = e.determinant();
  return {2.0 / std::sqrt(det), det, blocks};
}

double fidelity_cost(const SymmetricState& s) {
  return (s.m - s.c + 1.0) * (s.n - s.d + 1.0 - 2.0 * s.d * s.d / s.n);
}

double fidelity_closed(const SymmetricState& s) {
  require_convention(s, 3, "fidelity_closed");
  return 1.0 / std::sqrt(fidelity_cost(s));
}

double bipartite_fidelity(const SymmetricState& s) {
  require_convention(s, 2, "bipartite_fidelity");
  return 1.0 / std::sqrt((s.m - s.c + 1.0) * (s.n - s.d + 1.0));
}

EffectiveScheme squeeze(const EffectiveScheme& e, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("squeeze: factor must be positive");
  return {e.n_parties, e.vx / a, e.vp * a, e.wx / a, e.wp * a};
}

double optimal_squeezing(const EffectiveScheme& e) {
  if (e.n_parties != 3) throw std::invalid_argument("optimal_squeezing: expects 3 parties");
  if (!(e.vx > 0.0 && e.vp > 0.0 && e.wx > 0.0 && e.wp > 0.0)) {
    throw std::invalid_argument("optimal_squeezing: variances must be positive");
  }
  return std::sqrt(e.vx * (2.0 * e.vp + e.wp) / (3.0 * e.vp * e.wp));
}

double optimal_squeezing_numeric(const SymmetricState& s) {
  require_convention(s, 3, "optimal_squeezing_numeric");
  const EffectiveScheme e = to_effective(s);
  const auto cost = [&e](double log_a) { return fidelity_cost(from_effective(squeeze(e, std::exp(log_a)))); };

  double lo = std::log(1e-4);
  double hi = std::log(1e4);
  for (int widen = 0; widen < 8; ++widen) {
    const double best = golden_minimum(cost, lo, hi, 1e-10);
    const double edge = 1e-6 * (hi - lo);
    if (best - lo > edge && hi - best > edge) return std::exp(best);
    if (best - lo <= edge) lo -= (hi - lo);
    if (hi - best <= edge) hi += (hi - lo);
  }
  throw std::runtime_error("optimal_squeezing_numeric: no interior minimum found");
}

SymmetricState qnd_then_squeeze(const SymmetricState& s, double g, double a) {
  const EffectiveScheme measured = apply_qnd(to_effective(s), QndPlan{g * g, 1.0});
  return from_effective(squeeze(measured, a));
}

FidelityCurve fidelity_vs_squeezing(const SymmetricState& s, const std::vector<double>& a_grid) {
  FidelityCurve curve{s, fidelity_closed(s), {}};
  const EffectiveScheme e = to_effective(s);
  curve.points.reserve(a_grid.size());
  for (double a : a_grid) {
    const SymmetricState out = from_effective(squeeze(e, a));
    const bool valid = out.c > 0.0 && out.d > 0.0;
    curve.points.push_back({a, valid ? fidelity_closed(out) : std::numeric_limits<double>::quiet_NaN(), a, valid});
  }
  return curve;
}

FidelityCurve fidelity_vs_g(const SymmetricState& s, const std::vector<double>& g_grid, const SqueezingMode& mode) {
  FidelityCurve curve{s, fidelity_closed(s), {}};
  curve.points.reserve(g_grid.size());
  for (double g : g_grid) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("fidelity_vs_g: g must be finite and >= 0");
    const SymmetricState measured = qnd_then_squeeze(s, g, 1.0);
    if (!(measured.c > 0.0 && measured.d > 0.0)) {
      curve.points.push_back({g, std::numeric_limits<double>::quiet_NaN(), 1.0, false});
      continue;
    }
    const double a = std::holds_alternative<FixedSqueezing>(mode) ? std::get<FixedSqueezing>(mode).a
                                                                  : optimal_squeezing_numeric(measured);
    const SymmetricState out = from_effective(squeeze(to_effective(measured), a));
    curve.points.push_back({g, fidelity_closed(out), a, true});
  }
  return curve;
}

}  // namespace gslocc
