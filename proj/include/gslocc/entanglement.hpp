#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gslocc/protocols.hpp"
#include "gslocc/symmetric_state.hpp"

namespace gslocc {

/// Entanglement classes reachable by permutation-invariant tripartite
/// states, plus the two bookkeeping labels used in class maps. Enumerator
/// values are the codes written to CSV.
enum class EntanglementClass : int {
  Unphysical = -1,
  NotTransformable = 0,
  ClassI = 1,   ///< fully entangled
  ClassIV = 4,  ///< bound entangled: PPT across every cut, not fully separable
  ClassV = 5,   ///< fully separable
};

inline int code(EntanglementClass c) { return static_cast<int>(c); }

/// "I", "IV", "V", "unphysical" or "not-transformable".
std::string_view to_string(EntanglementClass c);

inline constexpr double kPptTolerance = 1e-9;

/// Smallest symplectic eigenvalue of the state transposed on mode 0. All
/// 1|(N-1) cuts are equivalent by symmetry. Throws for unphysical input.
double ppt_min_symplectic(const SymmetricState& s);

/// min(V_x, W_x) * min(V_p, W_p) >= 1: a single diagonal single-mode CM
/// sigma with gamma >= (+) sigma exists. Throws for unphysical input.
bool is_fully_separable(const SymmetricState& s);

/// Margin of the closed form, min(V_x, W_x) min(V_p, W_p) - 1.
double separability_margin(const SymmetricState& s);

/// Direct search for sigma_0 = diag(s_x, s_p), s_x s_p >= 1, with
/// gamma - (+) sigma_0 PSD. Scans log s_x on the boundary s_p = 1/s_x
/// (shrinking s_p toward the boundary only helps) with `grid_resolution`
/// points, then refines the best bracket by golden-section search.
bool separability_oracle(const SymmetricState& s, int grid_resolution = 64);

EntanglementClass classify(const SymmetricState& s);

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  /// Evenly spaced; a single-point axis sits at `min`.
  double at(int i) const;
};

enum class ProtocolKind { none, noise, qnd };

std::string_view to_string(ProtocolKind p);

struct ClassMap {
  double m = 0.0;
  double n = 0.0;
  int n_parties = 3;
  ProtocolKind protocol = ProtocolKind::none;
  std::optional<TargetRatios> targets;
  Quadrature noise_quadrature = Quadrature::x;
  GridAxis c_axis;
  GridAxis d_axis;
  /// Row-major: index = d_index * c_axis.count + c_index.
  std::vector<EntanglementClass> codes;

  EntanglementClass at(int c_index, int d_index) const {
    return codes[static_cast<std::size_t>(d_index) * static_cast<std::size_t>(c_axis.count) +
                 static_cast<std::size_t>(c_index)];
  }
};

/// Physical (c, d) rectangle for fixed (m, n, N): positive effective variances.
GridAxis default_c_axis(double m, int n_parties, int count);
GridAxis default_d_axis(double n, int n_parties, int count);

/// Class of every grid cell, optionally after planning and applying a
/// protocol. Cells are evaluated in parallel; the result does not depend on
/// the schedule. Throws if a protocol is requested without targets.
ClassMap class_map(double m, double n, int n_parties, const GridAxis& c_axis, const GridAxis& d_axis,
                   ProtocolKind protocol, std::optional<TargetRatios> targets,
                   Quadrature noise_quadrature = Quadrature::x);

}  // namespace gslocc
