#include "gslocc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gslocc/entanglement.hpp"
#include "gslocc/io.hpp"
#include "gslocc/protocols.hpp"
#include "gslocc/symmetric_state.hpp"
#include "gslocc/teleportation.hpp"

namespace gslocc::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Signals an invalid invocation (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateOptions {
  int parties = 3;
  std::optional<double> m, n, c, d;
  std::optional<double> vx, vp, wx, wp;
  std::optional<double> n1, r1, n_last, r_last;
};

struct RunConfig {
  StateOptions state;
  std::string out_path;
  std::string format;
  // prepare
  int sample = 0;
  std::uint64_t seed = 1;
  // map
  std::optional<double> map_m, map_n;
  int grid = 200;
  std::optional<int> c_count, d_count;
  std::optional<double> c_min, c_max, d_min, d_max;
  std::string protocol = "none";
  std::optional<double> k1, k2;
  std::string quadrature = "x";
  std::string ppm_path;
  // protocol
  bool verbose = false;
  // fidelity
  double transmittance_sq = 1.0;
  bool optimize = false;
  std::string sweep;
  std::string squeezing = "optimal";
  double db_min = 0.0;
  double db_max = 10.0;
  double g_min = 0.0;
  double g_max = 10.0;
  int points = 101;
};

void add_state_options(CLI::App* cmd, StateOptions& s) {
  cmd->add_option("--parties", s.parties, "Number of parties N")->check(CLI::Range(2, 64));
  cmd->add_option("--m", s.m, "x-variance of each mode");
  cmd->add_option("--n", s.n, "p-variance of each mode");
  cmd->add_option("--c", s.c, "x-correlation between modes");
  cmd->add_option("--d", s.d, "negated p-correlation between modes");
  cmd->add_option("--vx", s.vx, "preparation picture: x-variance of the N-1 identical inputs");
  cmd->add_option("--vp", s.vp, "preparation picture: p-variance of the N-1 identical inputs");
  cmd->add_option("--wx", s.wx, "preparation picture: x-variance of input N");
  cmd->add_option("--wp", s.wp, "preparation picture: p-variance of input N");
  cmd->add_option("--n1", s.n1, "thermal factor of the N-1 identical inputs");
  cmd->add_option("--r1", s.r1, "squeezing exponent of the N-1 identical inputs");
  cmd->add_option("--nN", s.n_last, "thermal factor of input N");
  cmd->add_option("--rN", s.r_last, "squeezing exponent of input N");
}

SymmetricState resolve_state(const StateOptions& o) {
  const int direct = o.m.has_value() + o.n.has_value() + o.c.has_value() + o.d.has_value();
  const int effective = o.vx.has_value() + o.vp.has_value() + o.wx.has_value() + o.wp.has_value();
  const int thermal = o.n1.has_value() + o.r1.has_value() + o.n_last.has_value() + o.r_last.has_value();
  const int pictures = (direct > 0) + (effective > 0) + (thermal > 0);
  if (pictures == 0) throw UsageError("state parameters required: --m --n --c --d, --vx --vp --wx --wp, or --n1 --r1 --nN --rN");
  if (pictures > 1) throw UsageError("mixed parameter pictures; give exactly one of (m,n,c,d), (vx,vp,wx,wp), (n1,r1,nN,rN)");
  if (direct > 0) {
    if (direct != 4) throw UsageError("partial state: give all of --m --n --c --d");
    return {o.parties, *o.m, *o.n, *o.c, *o.d};
  }
  try {
    if (effective > 0) {
      if (effective != 4) throw UsageError("partial state: give all of --vx --vp --wx --wp");
      return from_effective({o.parties, *o.vx, *o.vp, *o.wx, *o.wp});
    }
    if (thermal != 4) throw UsageError("partial state: give all of --n1 --r1 --nN --rN");
    return from_effective(effective_from_thermal(o.parties, *o.n1, *o.r1, *o.n_last, *o.r_last));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::optional<TargetRatios> resolve_targets(const RunConfig& cfg, bool required) {
  if (!cfg.k1 && !cfg.k2) {
    if (required) throw UsageError("protocol requires --k1 and --k2");
    return std::nullopt;
  }
  if (!cfg.k1 || !cfg.k2) throw UsageError("give both --k1 and --k2");
  TargetRatios t{*cfg.k1, *cfg.k2};
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return t;
}

Quadrature resolve_quadrature(const std::string& q) {
  if (q == "x") return Quadrature::x;
  if (q == "p") return Quadrature::p;
  throw UsageError("--quadrature must be x or p");
}

ordered_json physicality_json(const SymmetricState& s) {
  const EffectiveScheme e = to_effective(s);
  ordered_json j;
  j["physical"] = is_physical(s) && is_physical(build_cm(s));
  j["margins"] = {{"VxVp_minus_1", e.vx * e.vp - 1.0}, {"WxWp_minus_1", e.wx * e.wp - 1.0}};
  return j;
}

// Writes via --out when given, otherwise to the supplied stream.
template <typename Writer>
void emit(const RunConfig& cfg, std::ostream& out, bool binary, Writer&& writer) {
  if (cfg.out_path.empty()) {
    writer(out);
    return;
  }
  std::ofstream file(cfg.out_path, binary ? std::ios::binary : std::ios::out);
  if (!file) throw UsageError("cannot open output file " + cfg.out_path);
  writer(file);
}

void emit_json(const RunConfig& cfg, std::ostream& out, const ordered_json& j) {
  emit(cfg, out, false, [&j](std::ostream& s) { s << j.dump(2) << "\n"; });
}

int cmd_prepare(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sample > 0) {
    if (!cfg.state.m || !cfg.state.n) throw UsageError("--sample needs --m and --n");
    std::vector<SymmetricState> states;
    try {
      states = sample_physical(*cfg.state.m, *cfg.state.n, cfg.state.parties, cfg.sample, cfg.seed);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    ordered_json j;
    j["seed"] = cfg.seed;
    j["samples"] = ordered_json::array();
    for (const auto& s : states) j["samples"].push_back(state_to_json(s));
    emit_json(cfg, out, j);
    return 0;
  }
  const SymmetricState s = resolve_state(cfg.state);
  ordered_json j = state_to_json(s);
  const ordered_json verdict = physicality_json(s);
  for (const auto& [key, value] : verdict.items()) j[key] = value;
  emit_json(cfg, out, j);
  return 0;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const SymmetricState s = resolve_state(cfg.state);
  const EntanglementClass cls = classify(s);
  ordered_json j;
  j["state"] = state_to_json(s);
  j["class"] = std::string(to_string(cls));
  if (cls == EntanglementClass::Unphysical) {
    j["ppt_min"] = nullptr;
    j["fully_separable"] = nullptr;
  } else {
    j["ppt_min"] = ppt_min_symplectic(s);
    j["fully_separable"] = is_fully_separable(s);
    j["separability_margin"] = separability_margin(s);
  }
  const ordered_json verdict = physicality_json(s);
  for (const auto& [key, value] : verdict.items()) j[key] = value;
  emit_json(cfg, out, j);
  return 0;
}

int cmd_map(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.map_m || !cfg.map_n) throw UsageError("map needs --m and --n");
  const double m = *cfg.map_m;
  const double n = *cfg.map_n;
  if (!(m > 0.0 && n > 0.0)) throw UsageError("--m and --n must be positive");
  const int parties = cfg.state.parties;
  const int c_count = cfg.c_count.value_or(cfg.grid);
  const int d_count = cfg.d_count.value_or(cfg.grid);
  if (c_count < 1 || d_count < 1) throw UsageError("grid counts must be positive");
  GridAxis c_axis = default_c_axis(m, parties, c_count);
  GridAxis d_axis = default_d_axis(n, parties, d_count);
  if (cfg.c_min) c_axis.min = *cfg.c_min;
  if (cfg.c_max) c_axis.max = *cfg.c_max;
  if (cfg.d_min) d_axis.min = *cfg.d_min;
  if (cfg.d_max) d_axis.max = *cfg.d_max;
  if (!(c_axis.min <= c_axis.max) || !(d_axis.min <= d_axis.max)) throw UsageError("grid min must not exceed max");

  ProtocolKind protocol = ProtocolKind::none;
  if (cfg.protocol == "noise") {
    protocol = ProtocolKind::noise;
  } else if (cfg.protocol == "qnd") {
    protocol = ProtocolKind::qnd;
  } else if (cfg.protocol != "none") {
    throw UsageError("--protocol must be none, noise or qnd");
  }
  const auto targets = resolve_targets(cfg, protocol != ProtocolKind::none);

  const auto start = std::chrono::steady_clock::now();
  const ClassMap map = class_map(m, n, parties, c_axis, d_axis, protocol, targets, resolve_quadrature(cfg.quadrature));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "map: " << c_count * d_count << " cells in " << seconds << " s\n";

  if (cfg.format == "ppm") {
    emit(cfg, out, true, [&map](std::ostream& s) { write_class_map_ppm(s, map); });
  } else if (cfg.format.empty() || cfg.format == "csv") {
    emit(cfg, out, false, [&map](std::ostream& s) { write_class_map_csv(s, map); });
  } else {
    throw UsageError("map supports --format csv or ppm");
  }
  if (!cfg.ppm_path.empty()) {
    std::ofstream file(cfg.ppm_path, std::ios::binary);
    if (!file) throw UsageError("cannot open " + cfg.ppm_path);
    write_class_map_ppm(file, map);
  }
  return 0;
}

int cmd_protocol(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SymmetricState s = resolve_state(cfg.state);
  const TargetRatios targets = *resolve_targets(cfg, true);
  if (cfg.protocol != "noise" && cfg.protocol != "qnd") throw UsageError("--protocol must be noise or qnd");

  ordered_json j;
  j["input"] = state_to_json(s);
  j["targets"] = {{"k1", targets.k1}, {"k2", targets.k2}};
  if (!is_physical(build_cm(s))) {
    j["physical"] = false;
    j["transformable"] = false;
    j["reason"] = "unphysical-input";
    emit_json(cfg, out, j);
    return 0;
  }
  j["physical"] = true;

  const PlanOutcome outcome =
      cfg.protocol == "noise" ? plan_noise(s, targets, resolve_quadrature(cfg.quadrature)) : plan_qnd(s, targets);
  if (const auto* nt = std::get_if<NotTransformable>(&outcome)) {
    if (nt->reason == NotTransformableReason::degenerate_input) {
      err << "error: degenerate input (c = 0, or vanishing denominator); the correlation ratio is undefined\n";
      return 2;
    }
    j["transformable"] = false;
    j["reason"] = std::string(to_string(nt->reason));
  } else {
    const ProtocolPlan plan = std::holds_alternative<NoisePlan>(outcome) ? ProtocolPlan{std::get<NoisePlan>(outcome)}
                                                                         : ProtocolPlan{std::get<QndPlan>(outcome)};
    const SymmetricState result = apply_protocol(s, plan);
    j["transformable"] = true;
    j["plan"] = plan_to_json(plan);
    j["output"] = state_to_json(result);
    j["output_physical"] = is_physical(build_cm(result));
    j["ratio_residuals"] = {{"k1", result.n / result.m - targets.k1}, {"k2", result.d / result.c - targets.k2}};
  }
  if (cfg.verbose && cfg.protocol == "qnd") {
    ordered_json roots = ordered_json::array();
    for (const QndRoot& r : qnd_roots(s, targets)) {
      roots.push_back({{"g_sq", r.g_sq}, {"a_sq", r.a_sq}, {"admissible", r.admissible}});
    }
    j["roots"] = roots;
  }
  emit_json(cfg, out, j);
  return 0;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw UsageError("--points must be positive");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
  }
  return grid;
}

SqueezingMode resolve_squeezing(const std::string& text) {
  if (text == "optimal") return OptimalSqueezing{};
  const std::string prefix = "fixed:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const std::string number = text.substr(prefix.size());
      const double a = std::stod(number, &used);
      if (used == number.size() && a > 0.0) return FixedSqueezing{a};
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--squeezing must be optimal or fixed:<a> with a > 0");
}

int cmd_fidelity(const RunConfig& cfg, std::ostream& out) {
  const SymmetricState s = resolve_state(cfg.state);
  const bool physical = is_physical(s) && is_physical(build_cm(s));
  if (!physical) throw UsageError("fidelity needs a physical state");
  if (s.n_parties != 3 && s.n_parties != 2) throw UsageError("fidelity supports 2 or 3 parties");
  if (!(s.c > 0.0 && s.d > 0.0)) throw UsageError("fidelity needs c > 0 and d > 0 (gain convention R = diag(-1, 1))");

  if (s.n_parties == 2) {
    if (cfg.optimize || !cfg.sweep.empty()) throw UsageError("--optimize and --sweep need 3 parties");
    ordered_json j;
    j["state"] = state_to_json(s);
    j["physical"] = true;
    j["F"] = bipartite_fidelity(s);
    emit_json(cfg, out, j);
    return 0;
  }

  if (cfg.sweep == "a") {
    std::vector<double> grid = linear_grid(cfg.db_min, cfg.db_max, cfg.points);
    for (double& v : grid) v = from_db(v);
    const FidelityCurve curve = fidelity_vs_squeezing(s, grid);
    emit(cfg, out, false, [&curve](std::ostream& o) { write_curve_csv(o, curve, "squeezing sweep", "a"); });
    return 0;
  }
  if (cfg.sweep == "g") {
    const SqueezingMode mode = resolve_squeezing(cfg.squeezing);
    const FidelityCurve curve = fidelity_vs_g(s, linear_grid(cfg.g_min, cfg.g_max, cfg.points), mode);
    const std::string label = "qnd sweep, squeezing " + cfg.squeezing;
    emit(cfg, out, false, [&](std::ostream& o) { write_curve_csv(o, curve, label, "g"); });
    return 0;
  }
  if (!cfg.sweep.empty()) throw UsageError("--sweep must be a or g");

  CharlieSetup setup{cfg.transmittance_sq};
  try {
    setup.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const FidelityReport report = fidelity(s, setup);
  ordered_json j;
  j["state"] = state_to_json(s);
  j["physical"] = true;
  j["T"] = setup.transmittance_sq;
  j["F"] = report.fidelity;
  j["det_E"] = report.det_e;
  j["F_closed_T1"] = fidelity_closed(s);
  if (cfg.optimize) {
    const double a_opt = optimal_squeezing(to_effective(s));
    const SymmetricState squeezed = from_effective(squeeze(to_effective(s), a_opt));
    j["a_opt"] = a_opt;
    j["a_opt_db"] = to_db(a_opt);
    j["F_opt"] = fidelity_closed(squeezed);
    j["gain"] = fidelity_closed(squeezed) / fidelity_closed(s) - 1.0;
  }
  emit_json(cfg, out, j);
  return 0;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&flag](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

}  // namespace

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (!path) return args;

  std::ifstream file(*path);
  if (!file) throw UsageError("cannot open config file " + *path);
  json config;
  try {
    config = json::parse(file);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config file: ") + e.what());
  }
  if (!config.is_object()) throw UsageError("config file must hold a JSON object");

  std::vector<std::string> merged;
  static const std::vector<std::string> commands{"prepare", "classify", "map", "protocol", "fidelity"};
  const bool has_command =
      std::any_of(args.begin(), args.end(), [](const std::string& a) {
        return std::find(commands.begin(), commands.end(), a) != commands.end();
      });
  if (!has_command && config.contains("command")) merged.push_back(config.at("command").get<std::string>());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) continue;
    merged.push_back(args[i]);
  }
  for (const auto& [key, value] : config.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) merged.push_back(flag);
    } else if (value.is_number_integer()) {
      merged.push_back(flag);
      merged.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      merged.push_back(flag);
      merged.push_back(format_double(value.get<double>()));
    } else if (value.is_string()) {
      merged.push_back(flag);
      merged.push_back(value.get<std::string>());
    } else {
      throw UsageError("config key " + key + " must be a scalar");
    }
  }
  return merged;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Permutation-invariant Gaussian states: classification, LOCC protocols, teleportation"};
  app.require_subcommand(1);
  app.add_option("--config", "JSON file mirroring the flags; flags on the command line win");

  auto add_output = [&cfg](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out_path, "Write the result to this file");
    cmd->add_option("--format", cfg.format, "Output format: csv, json or ppm");
  };

  CLI::App* prepare = app.add_subcommand("prepare", "Build a symmetric state and report both parameter pictures");
  add_state_options(prepare, cfg.state);
  add_output(prepare);
  prepare->add_option("--sample", cfg.sample, "Draw this many physical (c, d) for the given --m --n");
  prepare->add_option("--seed", cfg.seed, "Seed for --sample");

  CLI::App* classify_cmd = app.add_subcommand("classify", "Entanglement class of a symmetric state");
  add_state_options(classify_cmd, cfg.state);
  add_output(classify_cmd);

  CLI::App* map = app.add_subcommand("map", "Entanglement class map over a (c, d) grid");
  map->add_option("--parties", cfg.state.parties, "Number of parties N")->check(CLI::Range(2, 64));
  map->add_option("--m", cfg.map_m, "x-variance of each mode");
  map->add_option("--n", cfg.map_n, "p-variance of each mode");
  map->add_option("--grid", cfg.grid, "Cells per axis");
  map->add_option("--c-count", cfg.c_count, "Cells along c");
  map->add_option("--d-count", cfg.d_count, "Cells along d");
  map->add_option("--c-min", cfg.c_min);
  map->add_option("--c-max", cfg.c_max);
  map->add_option("--d-min", cfg.d_min);
  map->add_option("--d-max", cfg.d_max);
  map->add_option("--protocol", cfg.protocol, "none, noise or qnd");
  map->add_option("--k1", cfg.k1, "Target n'/m'");
  map->add_option("--k2", cfg.k2, "Target d'/c'");
  map->add_option("--quadrature", cfg.quadrature, "Noise quadrature for the noise protocol (x or p)");
  map->add_option("--ppm", cfg.ppm_path, "Also write a P6 raster to this path");
  add_output(map);

  CLI::App* protocol = app.add_subcommand("protocol", "Plan and apply a transformation protocol");
  add_state_options(protocol, cfg.state);
  protocol->add_option("--protocol", cfg.protocol, "noise or qnd")->required();
  protocol->add_option("--k1", cfg.k1, "Target n'/m'");
  protocol->add_option("--k2", cfg.k2, "Target d'/c'");
  protocol->add_option("--quadrature", cfg.quadrature, "Noise quadrature (x or p)");
  protocol->add_flag("--verbose", cfg.verbose, "List every QND root");
  add_output(protocol);

  CLI::App* fid = app.add_subcommand("fidelity", "Assisted teleportation fidelity");
  add_state_options(fid, cfg.state);
  fid->add_option("--transmittance", cfg.transmittance_sq, "Charlie's intensity transmittance T");
  fid->add_flag("--optimize", cfg.optimize, "Report the optimal local squeezing");
  fid->add_option("--sweep", cfg.sweep, "Curve against squeezing (a) or QND strength (g)");
  fid->add_option("--squeezing", cfg.squeezing, "For --sweep g: optimal or fixed:<a>");
  fid->add_option("--db-min", cfg.db_min, "For --sweep a: first squeezing level in dB");
  fid->add_option("--db-max", cfg.db_max, "For --sweep a: last squeezing level in dB");
  fid->add_option("--g-min", cfg.g_min);
  fid->add_option("--g-max", cfg.g_max);
  fid->add_option("--points", cfg.points, "Curve points");
  add_output(fid);

  try {
    std::vector<std::string> reversed = merge_config(args);
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json" && cfg.format != "ppm") {
      throw UsageError("--format must be csv, json or ppm");
    }
    if (prepare->parsed()) return cmd_prepare(cfg, out);
    if (classify_cmd->parsed()) return cmd_classify(cfg, out);
    if (map->parsed()) return cmd_map(cfg, out, err);
    if (protocol->parsed()) return cmd_protocol(cfg, out, err);
    if (fid->parsed()) return cmd_fidelity(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace gslocc::cli
