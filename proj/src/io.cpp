#include "gslocc/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gslocc {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

ordered_json state_to_json(const SymmetricState& s) {
  const EffectiveScheme e = to_effective(s);
  ordered_json j;
  j["N"] = s.n_parties;
  j["m"] = s.m;
  j["n"] = s.n;
  j["c"] = s.c;
  j["d"] = s.d;
  j["effective"] = {{"Vx", e.vx}, {"Vp", e.vp}, {"Wx", e.wx}, {"Wp", e.wp}};
  return j;
}

SymmetricState state_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("state descriptor must be a JSON object");
  if (!j.contains("N")) throw std::invalid_argument("state descriptor needs \"N\"");
  const int parties = j.at("N").get<int>();

  const std::array<const char*, 4> direct_keys{"m", "n", "c", "d"};
  int direct = 0;
  for (const char* key : direct_keys) direct += j.contains(key) ? 1 : 0;
  if (direct != 0 && direct != 4) throw std::invalid_argument("state descriptor: give all of m, n, c, d");

  std::optional<SymmetricState> from_direct;
  if (direct == 4) {
    from_direct = SymmetricState{parties, j.at("m").get<double>(), j.at("n").get<double>(), j.at("c").get<double>(),
                                 j.at("d").get<double>()};
  }

  std::optional<SymmetricState> from_eff;
  if (j.contains("effective")) {
    const json& e = j.at("effective");
    const std::array<const char*, 4> keys{"Vx", "Vp", "Wx", "Wp"};
    for (const char* key : keys) {
      if (!e.contains(key)) throw std::invalid_argument("state descriptor: effective picture needs Vx, Vp, Wx, Wp");
    }
    from_eff = from_effective(EffectiveScheme{parties, e.at("Vx").get<double>(), e.at("Vp").get<double>(),
                                              e.at("Wx").get<double>(), e.at("Wp").get<double>()});
  }

  if (from_direct && from_eff) {
    const SymmetricState& a = *from_direct;
    const SymmetricState& b = *from_eff;
    const double diff = std::max({std::abs(a.m - b.m), std::abs(a.n - b.n), std::abs(a.c - b.c), std::abs(a.d - b.d)});
    if (diff > 1e-9 * std::max({1.0, std::abs(a.m), std::abs(a.n)})) {
      throw std::invalid_argument("state descriptor: direct and effective pictures disagree");
    }
    return a;
  }
  if (from_direct) return *from_direct;
  if (from_eff) return *from_eff;
  throw std::invalid_argument("state descriptor: no parameters given");
}

ordered_json plan_to_json(const ProtocolPlan& plan) {
  ordered_json j;
  if (const auto* noise = std::get_if<NoisePlan>(&plan)) {
    j["protocol"] = "noise";
    j["a_sq"] = noise->a_sq;
    j["v_noise"] = noise->v_noise;
    j["quadrature"] = noise->quadrature == Quadrature::x ? "x" : "p";
  } else {
    const auto& qnd = std::get<QndPlan>(plan);
    j["protocol"] = "qnd";
    j["a_sq"] = qnd.a_sq;
    j["g_sq"] = qnd.g_sq;
    j["quadrature"] = "x";
  }
  return j;
}

ProtocolPlan plan_from_json(const json& j) {
  const std::string protocol = j.at("protocol").get<std::string>();
  if (protocol == "noise") {
    NoisePlan p{j.at("a_sq").get<double>(), j.at("v_noise").get<double>(), Quadrature::x};
    if (j.contains("quadrature")) {
      const std::string q = j.at("quadrature").get<std::string>();
      if (q == "p") {
        p.quadrature = Quadrature::p;
      } else if (q != "x") {
        throw std::invalid_argument("plan: quadrature must be \"x\" or \"p\"");
      }
    }
    return p;
  }
  if (protocol == "qnd") return QndPlan{j.at("g_sq").get<double>(), j.at("a_sq").get<double>()};
  throw std::invalid_argument("plan: protocol must be \"noise\" or \"qnd\"");
}

void write_class_map_csv(std::ostream& out, const ClassMap& map) {
  out << "# m=" << format_double(map.m) << "\n";
  out << "# n=" << format_double(map.n) << "\n";
  out << "# N=" << map.n_parties << "\n";
  out << "# protocol=" << to_string(map.protocol);
  if (map.protocol == ProtocolKind::noise) out << " quadrature=" << (map.noise_quadrature == Quadrature::x ? "x" : "p");
  out << "\n";
  out << "# k1'=" << (map.targets ? format_double(map.targets->k1) : "none") << "\n";
  out << "# k2'=" << (map.targets ? format_double(map.targets->k2) : "none") << "\n";
  out << "# c_grid=" << format_double(map.c_axis.min) << "," << format_double(map.c_axis.max) << ","
      << map.c_axis.count << "\n";
  out << "# d_grid=" << format_double(map.d_axis.min) << "," << format_double(map.d_axis.max) << ","
      << map.d_axis.count << "\n";
  out << "# codes: -1 unphysical, 0 not-transformable, 1 class I, 4 class IV, 5 class V\n";
  out << "c,d,code\n";
  for (int di = 0; di < map.d_axis.count; ++di) {
    for (int ci = 0; ci < map.c_axis.count; ++ci) {
      out << format_double(map.c_axis.at(ci)) << "," << format_double(map.d_axis.at(di)) << ","
          << code(map.at(ci, di)) << "\n";
    }
  }
}

Rgb palette(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::ClassV:
      return {96, 96, 96};
    case EntanglementClass::ClassI:
      return {0, 0, 0};
    case EntanglementClass::ClassIV:
      return {160, 160, 160};
    case EntanglementClass::NotTransformable:
      return {224, 224, 224};
    case EntanglementClass::Unphysical:
      return {255, 255, 255};
  }
  return {255, 0, 0};
}

void write_class_map_ppm(std::ostream& out, const ClassMap& map) {
  out << "P6\n" << map.c_axis.count << " " << map.d_axis.count << "\n255\n";
  for (int di = map.d_axis.count - 1; di >= 0; --di) {
    for (int ci = 0; ci < map.c_axis.count; ++ci) {
      const Rgb color = palette(map.at(ci, di));
      out.put(static_cast<char>(color.r));
      out.put(static_cast<char>(color.g));
      out.put(static_cast<char>(color.b));
    }
  }
}

void write_curve_csv(std::ostream& out, const FidelityCurve& curve, const std::string& mode,
                     const std::string& axis) {
  const SymmetricState& s = curve.state;
  out << "# state " << format_double(s.m) << "," << format_double(s.n) << "," << format_double(s.c) << ","
      << format_double(s.d) << "; " << mode << "; baseline F0=" << format_double(curve.baseline) << "\n";
  out << axis << ",F\n";
  for (const CurvePoint& p : curve.points) {
    out << format_double(p.x) << "," << format_double(p.valid ? p.fidelity : std::nan("")) << "\n";
  }
}

}  // namespace gslocc
