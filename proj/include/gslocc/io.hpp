#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gslocc/entanglement.hpp"
#include "gslocc/protocols.hpp"
#include "gslocc/symmetric_state.hpp"
#include "gslocc/teleportation.hpp"

namespace gslocc {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// {"N", "m", "n", "c", "d", "effective": {"Vx", "Vp", "Wx", "Wp"}}.
nlohmann::ordered_json state_to_json(const SymmetricState& s);

/// Accepts the (m, n, c, d) keys, an "effective" object, or both (which must
/// agree to 1e-9). A partially specified picture is rejected.
SymmetricState state_from_json(const nlohmann::json& j);

/// {"protocol": "noise"|"qnd", "a_sq", "v_noise", "g_sq", "quadrature"}.
nlohmann::ordered_json plan_to_json(const ProtocolPlan& plan);
ProtocolPlan plan_from_json(const nlohmann::json& j);

/// '#' header lines (m, n, N, protocol, k1', k2', grid specs), then rows
/// "c,d,code" in row-major order.
void write_class_map_csv(std::ostream& out, const ClassMap& map);

/// Binary P6 raster; columns follow c ascending, rows d descending.
void write_class_map_ppm(std::ostream& out, const ClassMap& map);

struct Rgb {
  unsigned char r, g, b;
};
Rgb palette(EntanglementClass c);

/// "# state m,n,c,d; mode; baseline F0=..." then "x,F" rows; invalid points
/// are written as "x,nan".
void write_curve_csv(std::ostream& out, const FidelityCurve& curve, const std::string& mode,
                     const std::string& axis);

}  // namespace gslocc
