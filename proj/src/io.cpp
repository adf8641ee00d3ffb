#include "savanna/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "savanna/presets.hpp"

namespace savanna {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw ValidationError("config: " + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                const std::vector<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) config_error(where, "unknown key '" + it.key() + "'");
  }
}

double get_num(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) config_error(where, "missing key '" + key + "'");
  if (!obj[key].is_number()) config_error(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

double get_num_or(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) config_error(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

void range_warning(ScenarioConfig& cfg, const std::string& field, double value, double lo,
                   double hi) {
  if (value < lo || value > hi)
    cfg.warnings.push_back(field + "=" + fmt17(value) + " lies outside the tabulated region ranges [" +
                           fmt17(lo) + ", " + fmt17(hi) + "]");
}

VegetationParams parse_params(const json& jp, ScenarioConfig& cfg) {
  check_keys(jp, "params",
             {"gamma_G", "delta_G0", "K_G", "gamma_T", "delta_T", "K_T", "gamma_TG", "lambda_fG",
              "lambda_fT", "alpha", "theta", "tau", "omega_arg"});
  VegetationParams p;
  p.gamma_G = get_num(jp, "params", "gamma_G");
  p.delta_G0 = get_num_or(jp, "params", "delta_G0", 0.0);
  p.K_G = get_num(jp, "params", "K_G");
  p.gamma_T = get_num(jp, "params", "gamma_T");
  p.delta_T = get_num_or(jp, "params", "delta_T", 0.0);
  p.K_T = get_num(jp, "params", "K_T");
  p.gamma_TG = get_num(jp, "params", "gamma_TG");
  p.lambda_fG = get_num(jp, "params", "lambda_fG");
  p.lambda_fT = get_num(jp, "params", "lambda_fT");
  p.alpha = get_num_or(jp, "params", "alpha", 2.0);
  p.theta = get_num_or(jp, "params", "theta", 2.0);
  p.tau = get_num(jp, "params", "tau");
  if (jp.contains("omega_arg")) {
    const std::string c = jp["omega_arg"].get<std::string>();
    if (c == "burnt")
      p.omega_arg = OmegaArgConvention::BurntGrass;
    else if (c == "standing")
      p.omega_arg = OmegaArgConvention::StandingGrass;
    else
      config_error("params.omega_arg", "must be 'burnt' or 'standing'");
  }
  validate(p);
  // Union of the tabulated region ranges, warn-only.
  range_warning(cfg, "K_G", p.K_G, 2, 20);
  range_warning(cfg, "gamma_G", p.gamma_G, 0.4, 4.6);
  range_warning(cfg, "delta_G0", p.delta_G0, 0, 0.9);
  range_warning(cfg, "K_T", p.K_T, 10, 115);
  range_warning(cfg, "gamma_T", p.gamma_T, 0.3, 7.2);
  range_warning(cfg, "delta_T", p.delta_T, 0, 0.015);
  range_warning(cfg, "lambda_fG", p.lambda_fG, 0.1, 0.9);
  range_warning(cfg, "lambda_fT", p.lambda_fT, 0.1, 0.5);
  range_warning(cfg, "tau", p.tau, 0.5, 20);
  range_warning(cfg, "gamma_TG", p.gamma_TG, -0.01, 0.09);
  return p;
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("", "top level must be an object");
  check_keys(j, "config",
             {"params", "initial_conditions", "horizon", "dt", "out", "grid", "sweep", "orbit",
              "meta"});
  ScenarioConfig cfg;
  if (!j.contains("params")) config_error("", "missing 'params'");
  cfg.params = parse_params(j["params"], cfg);

  if (j.contains("initial_conditions")) {
    if (!j["initial_conditions"].is_array())
      config_error("initial_conditions", "must be an array");
    for (const auto& ic : j["initial_conditions"]) {
      check_keys(ic, "initial_conditions[]", {"G", "T"});
      State s;
      s.G = get_num(ic, "initial_conditions[]", "G");
      s.T = get_num(ic, "initial_conditions[]", "T");
      if (s.G < 0 || s.T < 0) config_error("initial_conditions[]", "must be nonnegative");
      cfg.initial_conditions.push_back(s);
    }
  }
  if (j.contains("horizon")) {
    if (!j["horizon"].is_number_integer() || j["horizon"].get<int>() < 0)
      config_error("horizon", "must be a nonnegative integer");
    cfg.horizon = j["horizon"].get<int>();
  }
  cfg.dt = get_num_or(j, "config", "dt", 0.0);
  if (cfg.dt < 0) config_error("dt", "must be positive");
  if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    check_keys(g, "grid", {"nG", "nT", "G_min", "G_max", "T_min", "T_max"});
    cfg.grid.nG = static_cast<int>(get_num_or(g, "grid", "nG", 50));
    cfg.grid.nT = static_cast<int>(get_num_or(g, "grid", "nT", 50));
    if (cfg.grid.nG < 1 || cfg.grid.nT < 1) config_error("grid", "nG and nT must be >= 1");
    if (g.contains("G_min")) cfg.grid.G_min = get_num(g, "grid", "G_min");
    if (g.contains("G_max")) cfg.grid.G_max = get_num(g, "grid", "G_max");
    if (g.contains("T_min")) cfg.grid.T_min = get_num(g, "grid", "T_min");
    if (g.contains("T_max")) cfg.grid.T_max = get_num(g, "grid", "T_max");
    if (cfg.grid.G_min.has_value() != cfg.grid.G_max.has_value() ||
        cfg.grid.T_min.has_value() != cfg.grid.T_max.has_value())
      config_error("grid", "bounds must be given as min/max pairs");
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    check_keys(s, "sweep", {"parameter", "values", "probes"});
    if (!s.contains("parameter") || !s.contains("values"))
      config_error("sweep", "needs 'parameter' and 'values'");
    const std::string name = s["parameter"].get<std::string>();
    if (name == "gamma_TG")
      cfg.sweep_parameter = SweepParameter::GammaTG;
    else if (name == "tau")
      cfg.sweep_parameter = SweepParameter::Tau;
    else if (name == "lambda_fT")
      cfg.sweep_parameter = SweepParameter::LambdaFT;
    else if (name == "lambda_fG")
      cfg.sweep_parameter = SweepParameter::LambdaFG;
    else
      config_error("sweep.parameter", "must be one of gamma_TG, tau, lambda_fT, lambda_fG");
    for (const auto& v : s["values"]) {
      if (!v.is_number()) config_error("sweep.values", "must be numbers");
      cfg.sweep_values.push_back(v.get<double>());
    }
    if (s.contains("probes")) cfg.sweep_probes = s["probes"].get<bool>();
  }
  if (j.contains("orbit")) {
    const auto& o = j["orbit"];
    check_keys(o, "orbit", {"kind", "samples"});
    if (o.contains("kind")) {
      cfg.orbit_kind = o["kind"].get<std::string>();
      if (cfg.orbit_kind != "auto" && cfg.orbit_kind != "grassland" &&
          cfg.orbit_kind != "savanna")
        config_error("orbit.kind", "must be auto, grassland, or savanna");
    }
    if (o.contains("samples")) {
      cfg.orbit_samples = static_cast<int>(get_num(o, "orbit", "samples"));
      if (cfg.orbit_samples < 2) config_error("orbit.samples", "must be >= 2");
    }
  }
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string params_to_json(const VegetationParams& p, int indent) {
  const std::string pad(indent, ' ');
  const std::string pad2(indent + 2, ' ');
  std::ostringstream o;
  o << "{\n";
  auto field = [&](const char* k, double v, bool last = false) {
    o << pad2 << '"' << k << "\": " << fmt17(v) << (last ? "\n" : ",\n");
  };
  field("gamma_G", p.gamma_G);
  field("delta_G0", p.delta_G0);
  field("K_G", p.K_G);
  field("gamma_T", p.gamma_T);
  field("delta_T", p.delta_T);
  field("K_T", p.K_T);
  field("gamma_TG", p.gamma_TG);
  field("lambda_fG", p.lambda_fG);
  field("lambda_fT", p.lambda_fT);
  field("alpha", p.alpha);
  field("theta", p.theta);
  field("tau", p.tau);
  o << pad2 << "\"omega_arg\": \""
    << (p.omega_arg == OmegaArgConvention::BurntGrass ? "burnt" : "standing") << "\"\n";
  o << pad << "}";
  return o.str();
}

std::string reproduction_json(const ScenarioConfig& cfg, const std::string& command,
                              const std::string& extra_json_fields) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"meta\": {\n";
  o << "    \"version\": \"" << SAVANNA_VERSION << "\",\n";
  o << "    \"command\": \"" << command << "\",\n";
  o << "    \"determinism\": \"all computations are seed-free and deterministic; identical "
       "config yields byte-identical output\"";
  if (!extra_json_fields.empty()) o << ",\n" << extra_json_fields;
  o << "\n  },\n";
  o << "  \"params\": " << params_to_json(cfg.params, 2);
  if (!cfg.initial_conditions.empty()) {
    o << ",\n  \"initial_conditions\": [";
    for (size_t i = 0; i < cfg.initial_conditions.size(); ++i) {
      if (i) o << ", ";
      o << "{\"G\": " << fmt17(cfg.initial_conditions[i].G)
        << ", \"T\": " << fmt17(cfg.initial_conditions[i].T) << "}";
    }
    o << "]";
  }
  o << ",\n  \"horizon\": " << cfg.horizon;
  if (cfg.dt > 0) o << ",\n  \"dt\": " << fmt17(cfg.dt);
  if (command == "basin") {
    o << ",\n  \"grid\": {\"nG\": " << cfg.grid.nG << ", \"nT\": " << cfg.grid.nT;
    if (cfg.grid.G_min)
      o << ", \"G_min\": " << fmt17(*cfg.grid.G_min) << ", \"G_max\": " << fmt17(*cfg.grid.G_max);
    if (cfg.grid.T_min)
      o << ", \"T_min\": " << fmt17(*cfg.grid.T_min) << ", \"T_max\": " << fmt17(*cfg.grid.T_max);
    o << "}";
  }
  if (command == "sweep" && cfg.sweep_parameter) {
    o << ",\n  \"sweep\": {\"parameter\": \"" << to_string(*cfg.sweep_parameter)
      << "\", \"values\": [";
    for (size_t i = 0; i < cfg.sweep_values.size(); ++i) {
      if (i) o << ", ";
      o << fmt17(cfg.sweep_values[i]);
    }
    o << "], \"probes\": " << (cfg.sweep_probes ? "true" : "false") << "}";
  }
  if (command == "orbit")
    o << ",\n  \"orbit\": {\"kind\": \"" << cfg.orbit_kind
      << "\", \"samples\": " << cfg.orbit_samples << "}";
  o << "\n}\n";
  return o.str();
}

std::string thresholds_to_json(const ThresholdSet& t, const VegetationParams& p) {
  auto val = [](const ThresholdValue& v) {
    if (v.kind == ThresholdValue::Kind::Value) return fmt17(v.value);
    return '"' + v.str() + '"';
  };
  std::ostringstream o;
  o << "{\n";
  o << "  \"omega_arg\": \""
    << (p.omega_arg == OmegaArgConvention::BurntGrass ? "burnt" : "standing") << "\",\n";
  o << "  \"R_01\": " << val(t.R_01) << ",\n";
  o << "  \"R_pulse_Ge\": " << val(t.R_pulse_Ge) << ",\n";
  o << "  \"R_tilde_R01\": " << val(t.R_tilde_R01) << ",\n";
  o << "  \"R_pulse_star\": " << val(t.R_pulse_star) << ",\n";
  o << "  \"R_stable_star\": " << val(t.R_stable_star) << ",\n";
  o << "  \"R_tilde_stable_star2\": " << val(t.R_tilde_stable_star2) << "\n";
  o << "}\n";
  return o.str();
}

std::string regime_to_json(const RegimeCase& rc, const VegetationParams& p) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"case\": \"" << rc.case_label << "\",\n";
  o << "  \"boundary\": " << (rc.boundary ? "true" : "false") << ",\n";
  o << "  \"equilibria\": [\n";
  for (size_t i = 0; i < rc.equilibria.size(); ++i) {
    const auto& e = rc.equilibria[i];
    o << "    {\"id\": \"" << to_string(e.id) << "\", \"exists\": "
      << (e.exists ? "true" : "false") << ", \"verdict\": \"" << to_string(e.verdict) << "\"}"
      << (i + 1 < rc.equilibria.size() ? ",\n" : "\n");
  }
  o << "  ],\n";
  std::string th = thresholds_to_json(rc.thresholds, p);
  // indent the nested document
  std::string indented;
  for (char c : th) {
    indented += c;
    if (c == '\n') indented += "  ";
  }
  while (!indented.empty() && (indented.back() == ' ' || indented.back() == '\n'))
    indented.pop_back();
  o << "  \"thresholds\": " << indented << "\n";
  o << "}\n";
  return o.str();
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream o;
  o << "t,G,T,event\n";
  size_t next_fire = 0;
  for (size_t i = 0; i < traj.states.size(); ++i) {
    const State& s = traj.states[i];
    bool is_post_fire = false;
    if (next_fire < traj.impulses.size() && i > 0) {
      const State& post = traj.impulses[next_fire].post;
      if (s.t == post.t && s.G == post.G && s.T == post.T &&
          traj.states[i - 1].t == traj.impulses[next_fire].pre.t) {
        is_post_fire = true;
        ++next_fire;
      }
    }
    o << fmt17(s.t) << ',' << fmt17(s.G) << ',' << fmt17(s.T) << ','
      << (is_post_fire ? "fire" : "") << '\n';
  }
  return o.str();
}

std::string orbit_to_csv(const PeriodicOrbit& orbit) {
  std::ostringstream o;
  o << "phase,G,T\n";
  for (const auto& s : orbit.samples)
    o << fmt17(s.phase) << ',' << fmt17(s.G) << ',' << fmt17(s.T) << '\n';
  return o.str();
}

std::string basin_to_csv(const BasinGrid& grid) {
  std::ostringstream o;
  o << "G0,T0,attractor,periods\n";
  const size_t nT = grid.T_axis.size();
  for (size_t i = 0; i < grid.G_axis.size(); ++i)
    for (size_t j = 0; j < nT; ++j) {
      const auto& c = grid.cells[i * nT + j];
      o << fmt17(grid.G_axis[i]) << ',' << fmt17(grid.T_axis[j]) << ',' << to_string(c.kind)
        << ',' << c.periods_to_converge << '\n';
    }
  return o.str();
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream o;
  o << "value,R01,RpulseGe,RtildeR01,RpulseStar,RstableStar,RtildeStableStar2,case,attractors\n";
  for (const auto& pt : points) {
    o << fmt17(pt.value) << ',';
    if (!pt.error.empty()) {
      o << "error,error,error,error,error,error,error,\"" << pt.error << "\"\n";
      continue;
    }
    const ThresholdSet& t = pt.thresholds;
    o << t.R_01.str() << ',' << t.R_pulse_Ge.str() << ',' << t.R_tilde_R01.str() << ','
      << t.R_pulse_star.str() << ',' << t.R_stable_star.str() << ','
      << t.R_tilde_stable_star2.str() << ',' << pt.regime.case_label << ',';
    std::string att;
    for (const auto& k : pt.probe_attractors) att += (att.empty() ? "" : "+") + to_string(k);
    o << att << '\n';
  }
  return o.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write '" + path + "'");
  out << content;
}

}  // namespace savanna
