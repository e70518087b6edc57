#include "gslocc/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gslocc/parallel.hpp"

namespace gslocc {

namespace {

void require_physical(const SymmetricState& s, const char* what) {
  if (!is_physical(build_cm(s))) throw std::invalid_argument(std::string(what) + ": input state is unphysical");
}

// lambda_min(gamma - (+) diag(e^t, e^-t)).
double decomposition_slack(const Matrix& gamma, double log_sx) {
  Matrix residual = gamma;
  const double sx = std::exp(log_sx);
  const double sp = std::exp(-log_sx);
  for (Eigen::Index k = 0; k < gamma.rows() / 2; ++k) {
    residual(2 * k, 2 * k) -= sx;
    residual(2 * k + 1, 2 * k + 1) -= sp;
  }
  return min_eigenvalue(residual);
}

}  // namespace

std::string_view to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::Unphysical:
      return "unphysical";
    case EntanglementClass::NotTransformable:
      return "not-transformable";
    case EntanglementClass::ClassI:
      return "I";
    case EntanglementClass::ClassIV:
      return "IV";
    case EntanglementClass::ClassV:
      return "V";
  }
  return "unknown";
}

std::string_view to_string(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::none:
      return "none";
    case ProtocolKind::noise:
      return "noise";
    case ProtocolKind::qnd:
      return "qnd";
  }
  return "unknown";
}

double ppt_min_symplectic(const SymmetricState& s) {
  const CovarianceMatrix gamma = build_cm(s);
  if (!is_physical(gamma)) throw std::invalid_argument("ppt_min_symplectic: input state is unphysical");
  const std::array<int, 1> first{0};
  return symplectic_spectrum(partial_transpose(gamma, first))(0);
}

double separability_margin(const SymmetricState& s) {
  const EffectiveScheme e = to_effective(s);
  return std::min(e.vx, e.wx) * std::min(e.vp, e.wp) - 1.0;
}

bool is_fully_separable(const SymmetricState& s) {
  require_physical(s, "is_fully_separable");
  return separability_margin(s) >= -1e-12;
}

bool separability_oracle(const SymmetricState& s, int grid_resolution) {
  if (grid_resolution < 3) throw std::invalid_argument("separability_oracle: grid_resolution must be >= 3");
  const Matrix gamma = build_cm(s).matrix();
  const Eigen::Index modes = gamma.rows() / 2;

  // Necessary bounds from the diagonal: s_x <= gamma_xx and 1/s_x <= gamma_pp.
  double max_sx = gamma(0, 0);
  double max_sp = gamma(1, 1);
  for (Eigen::Index k = 1; k < modes; ++k) {
    max_sx = std::min(max_sx, gamma(2 * k, 2 * k));
    max_sp = std::min(max_sp, gamma(2 * k + 1, 2 * k + 1));
  }
  if (!(max_sx > 0.0 && max_sp > 0.0)) return false;
  const double lo = -std::log(max_sp);
  const double hi = std::log(max_sx);
  const double tol = -1e-9 * std::max(1.0, gamma.diagonal().maxCoeff());
  if (lo > hi) return false;
  if (hi - lo < 1e-15) return decomposition_slack(gamma, lo) >= tol;

  const double step = (hi - lo) / (grid_resolution - 1);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_resolution; ++i) {
    const double value = decomposition_slack(gamma, lo + i * step);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  if (best_value >= tol) return true;

  double a = lo + std::max(best - 1, 0) * step;
  double b = lo + std::min(best + 1, grid_resolution - 1) * step;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = decomposition_slack(gamma, x1);
  double f2 = decomposition_slack(gamma, x2);
  for (int iter = 0; iter < 200 && b - a > 1e-13; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = decomposition_slack(gamma, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = decomposition_slack(gamma, x1);
    }
    best_value = std::max({best_value, f1, f2});
    if (best_value >= tol) return true;
  }
  return best_value >= tol;
}

EntanglementClass classify(const SymmetricState& s) {
  const CovarianceMatrix gamma = build_cm(s);
  if (!is_physical(gamma)) return EntanglementClass::Unphysical;
  const std::array<int, 1> first{0};
  const double ppt = symplectic_spectrum(partial_transpose(gamma, first))(0);
  if (ppt < 1.0 - kPptTolerance) return EntanglementClass::ClassI;
  return separability_margin(s) >= -1e-12 ? EntanglementClass::ClassV : EntanglementClass::ClassIV;
}

double GridAxis::at(int i) const {
  if (count <= 1) return min;
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

GridAxis default_c_axis(double m, int n_parties, int count) {
  return {-m / (n_parties - 1), m, count};
}

GridAxis default_d_axis(double n, int n_parties, int count) {
  return {-n, n / (n_parties - 1), count};
}

ClassMap class_map(double m, double n, int n_parties, const GridAxis& c_axis, const GridAxis& d_axis,
                   ProtocolKind protocol, std::optional<TargetRatios> targets, Quadrature noise_quadrature) {
  if (c_axis.count < 1 || d_axis.count < 1) throw std::invalid_argument("class_map: grid axes must be nonempty");
  if (!std::isfinite(c_axis.min) || !std::isfinite(c_axis.max) || !std::isfinite(d_axis.min) ||
      !std::isfinite(d_axis.max)) {
    throw std::invalid_argument("class_map: grid bounds must be finite");
  }
  if (n_parties < 2) throw std::invalid_argument("class_map: needs at least two parties");
  if (protocol != ProtocolKind::none) {
    if (!targets) throw std::invalid_argument("class_map: protocol requires target ratios");
    targets->validate();
  }

  ClassMap out{m, n, n_parties, protocol, targets, noise_quadrature, c_axis, d_axis, {}};
  const std::size_t cells = static_cast<std::size_t>(c_axis.count) * static_cast<std::size_t>(d_axis.count);
  out.codes.assign(cells, EntanglementClass::Unphysical);

  parallel_for(cells, [&](std::size_t index) {
    const int ci = static_cast<int>(index % static_cast<std::size_t>(c_axis.count));
    const int di = static_cast<int>(index / static_cast<std::size_t>(c_axis.count));
    const SymmetricState s{n_parties, m, n, c_axis.at(ci), d_axis.at(di)};
    if (!is_physical(build_cm(s))) {
      out.codes[index] = EntanglementClass::Unphysical;
      return;
    }
    if (protocol == ProtocolKind::none) {
      out.codes[index] = classify(s);
      return;
    }
    const PlanOutcome outcome =
        protocol == ProtocolKind::noise ? plan_noise(s, *targets, noise_quadrature) : plan_qnd(s, *targets);
    if (const auto* noise = std::get_if<NoisePlan>(&outcome)) {
      out.codes[index] = classify(apply_protocol(s, *noise));
    } else if (const auto* qnd = std::get_if<QndPlan>(&outcome)) {
      out.codes[index] = classify(apply_protocol(s, *qnd));
    } else {
      out.codes[index] = EntanglementClass::NotTransformable;
    }
  });
  return out;
}

}  // namespace gslocc
