#include <cstdio>
#include <cmath>
#include <limits>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "savanna/io.hpp"
#include "savanna/presets.hpp"

namespace {

using namespace savanna;

struct GlobalOpts {
  std::string config_path;
  std::string preset;
  std::string omega_arg;
  double dt = -1;
  int horizon = -1;
  std::string out_dir;
  double gamma_tg = std::numeric_limits<double>::quiet_NaN();
  double tau = std::numeric_limits<double>::quiet_NaN();
  double lambda_fg = std::numeric_limits<double>::quiet_NaN();
  double lambda_ft = std::numeric_limits<double>::quiet_NaN();
};

ScenarioConfig resolve_config(const GlobalOpts& g) {
  if (!g.config_path.empty() && !g.preset.empty())
    throw ValidationError("config: give either --config or --preset, not both");
  ScenarioConfig cfg;
  if (!g.config_path.empty()) {
    cfg = load_config_file(g.config_path);
  } else if (!g.preset.empty()) {
    cfg.params = find_preset(g.preset).params;
  } else {
    throw ValidationError("config: one of --config or --preset is required");
  }
  if (!std::isnan(g.gamma_tg)) cfg.params.gamma_TG = g.gamma_tg;
  if (!std::isnan(g.tau)) cfg.params.tau = g.tau;
  if (!std::isnan(g.lambda_fg)) cfg.params.lambda_fG = g.lambda_fg;
  if (!std::isnan(g.lambda_ft)) cfg.params.lambda_fT = g.lambda_ft;
  if (g.omega_arg == "burnt")
    cfg.params.omega_arg = OmegaArgConvention::BurntGrass;
  else if (g.omega_arg == "standing")
    cfg.params.omega_arg = OmegaArgConvention::StandingGrass;
  else if (!g.omega_arg.empty())
    throw ValidationError("--omega-arg: must be 'burnt' or 'standing'");
  if (g.dt > 0) cfg.dt = g.dt;
  if (g.horizon >= 0) cfg.horizon = g.horizon;
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  validate(cfg.params);
  return cfg;
}

void emit_warnings(const ScenarioConfig& cfg) {
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
}

std::string out_path(const ScenarioConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

int cmd_thresholds(const ScenarioConfig& cfg) {
  const DerivedQuantities d = derive_quantities(cfg.params);
  ThresholdSet t = compute_thresholds(cfg.params, d);
  if (t.R_pulse_Ge.gt1() && t.R_pulse_star.gt1()) {
    try {
      const PeriodicOrbit orbit = solve_savanna_fixed_point(cfg.params, d, 2);
      t = compute_thresholds(cfg.params, d, &orbit);
    } catch (const BracketError&) {
    }
  }
  const std::string doc = thresholds_to_json(t, cfg.params);
  std::cout << doc;
  write_file(out_path(cfg, "thresholds.json"), doc);
  write_file(out_path(cfg, "run.json"), reproduction_json(cfg, "thresholds"));
  return 0;
}

int cmd_classify(const ScenarioConfig& cfg) {
  const DerivedQuantities d = derive_quantities(cfg.params);
  const RegimeCase rc = classify_regime(cfg.params, d);
  std::cout << rc.case_label << '\n';
  write_file(out_path(cfg, "classify.json"), regime_to_json(rc, cfg.params));
  write_file(out_path(cfg, "run.json"), reproduction_json(cfg, "classify"));
  return 0;
}

int cmd_simulate(const ScenarioConfig& cfg, const std::string& scheme_name) {
  const DerivedQuantities d = derive_quantities(cfg.params);
  const double dt = cfg.dt > 0 ? cfg.dt : cfg.params.tau / 1000.0;
  const Scheme scheme = scheme_name == "reference" ? Scheme::Reference : Scheme::NSFD;
  std::vector<State> initials = cfg.initial_conditions;
  if (initials.empty()) initials.push_back({0.5 * d.X_G, 0.5 * d.Y_T, 0.0});
  for (size_t i = 0; i < initials.size(); ++i) {
    const Trajectory traj = run(initials[i], cfg.params, d, cfg.horizon, dt, scheme);
    const std::string name =
        initials.size() == 1 ? "trajectory.csv" : "trajectory_" + std::to_string(i) + ".csv";
    write_file(out_path(cfg, name), trajectory_to_csv(traj));
  }
  write_file(out_path(cfg, "run.json"), reproduction_json(cfg, "simulate"));
  return 0;
}

int cmd_orbit(const ScenarioConfig& cfg) {
  const DerivedQuantities d = derive_quantities(cfg.params);
  PeriodicOrbit orbit;
  std::string kind = cfg.orbit_kind;
  if (kind == "auto") {
    try {
      orbit = solve_savanna_fixed_point(cfg.params, d, cfg.orbit_samples);
      kind = "savanna";
    } catch (const ModelError&) {
      orbit = grassland_orbit(cfg.params, d, cfg.orbit_samples);
      kind = "grassland";
    }
  } else if (kind == "savanna") {
    try {
      orbit = solve_savanna_fixed_point(cfg.params, d, cfg.orbit_samples);
    } catch (const BracketError& e) {
      throw ExistenceError("R*_0,pulse", e.what());
    }
  } else {
    orbit = grassland_orbit(cfg.params, d, cfg.orbit_samples);
  }
  const FloquetReport fl = kind == "savanna" ? savanna_floquet(orbit, cfg.params, d)
                                             : grassland_floquet(cfg.params, d);
  write_file(out_path(cfg, "orbit.csv"), orbit_to_csv(orbit));
  std::string extra = "    \"orbit_kind\": \"" + kind + "\",\n";
  extra += "    \"G_star\": " + fmt17(orbit.G_star) + ",\n";
  extra += "    \"T_star\": " + fmt17(orbit.T_star) + ",\n";
  extra += "    \"floquet\": {\"lambda1\": " + fmt17(fl.lambda1) +
           ", \"lambda2\": " + fmt17(fl.lambda2) +
           ", \"stable\": " + (fl.stable ? "true" : "false") + "}";
  write_file(out_path(cfg, "run.json"), reproduction_json(cfg, "orbit", extra));
  std::cout << kind << " orbit: G*=" << fmt17(orbit.G_star) << " T*=" << fmt17(orbit.T_star)
            << '\n';
  return 0;
}

int cmd_basin(const ScenarioConfig& cfg) {
  const DerivedQuantities d = derive_quantities(cfg.params);
  DetectOptions opt;
  opt.dt = cfg.dt;
  const BasinGrid grid = basin_map(cfg.params, d, cfg.grid, opt);
  write_file(out_path(cfg, "basin.csv"), basin_to_csv(grid));
  write_file(out_path(cfg, "run.json"), reproduction_json(cfg, "basin"));
  return 0;
}

int cmd_sweep(const ScenarioConfig& cfg) {
  if (!cfg.sweep_parameter)
    throw ValidationError("config: sweep requires a 'sweep' block or --param/--values");
  SweepOptions opt;
  opt.probes = cfg.sweep_probes;
  opt.detect.dt = cfg.dt;
  const auto points = parameter_sweep(cfg.params, *cfg.sweep_parameter, cfg.sweep_values, opt);
  write_file(out_path(cfg, "sweep.csv"), sweep_to_csv(points));
  write_file(out_path(cfg, "run.json"), reproduction_json(cfg, "sweep"));
  std::cout << sweep_to_csv(points);
  return 0;
}

int cmd_presets_list() {
  for (const auto& pre : region_presets()) {
    std::cout << pre.name << ": " << pre.description << "\n  params: "
              << params_to_json(pre.params, 2) << "\n  gamma_TG panels: [";
    for (size_t i = 0; i < pre.gamma_TG_panels.size(); ++i)
      std::cout << (i ? ", " : "") << fmt17(pre.gamma_TG_panels[i]);
    std::cout << "]\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"impulsive tree-grass-fire dynamics toolkit"};
  app.require_subcommand(1);
  app.fallthrough(true);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "scenario config JSON");
  app.add_option("--preset", g.preset, "built-in region preset name");
  app.add_option("--omega-arg", g.omega_arg, "fire-intensity argument convention: burnt|standing");
  app.add_option("--dt", g.dt, "integrator step (yr), default tau/1000");
  app.add_option("--horizon", g.horizon, "number of fire periods");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--gamma-tg", g.gamma_tg, "override gamma_TG");
  app.add_option("--tau", g.tau, "override tau");
  app.add_option("--lambda-fg", g.lambda_fg, "override lambda_fG");
  app.add_option("--lambda-ft", g.lambda_ft, "override lambda_fT");

  auto* thresholds = app.add_subcommand("thresholds", "emit the six thresholds as JSON");
  auto* classify = app.add_subcommand("classify", "classify the long-term regime");
  auto* simulate = app.add_subcommand("simulate", "run the impulsive integrator, emit CSV");
  std::string scheme = "nsfd";
  simulate->add_option("--scheme", scheme, "nsfd|reference");
  std::vector<std::string> ic_strings;
  simulate->add_option("--initial", ic_strings, "initial condition 'G,T' (repeatable)");
  auto* orbit = app.add_subcommand("orbit", "sample a periodic orbit over one period");
  std::string orbit_kind;
  int orbit_samples = 0;
  orbit->add_option("--kind", orbit_kind, "auto|grassland|savanna");
  orbit->add_option("--samples", orbit_samples, "samples per period (default 512)");
  auto* basin = app.add_subcommand("basin", "map basins of attraction on a grid");
  int nG = 0, nT = 0;
  basin->add_option("--ng", nG, "grid cells along G");
  basin->add_option("--nt", nT, "grid cells along T");
  auto* sweep = app.add_subcommand("sweep", "sweep one parameter");
  std::string sweep_param;
  std::string sweep_values;
  bool no_probes = false;
  sweep->add_option("--param", sweep_param, "gamma_TG|tau|lambda_fT|lambda_fG");
  sweep->add_option("--values", sweep_values, "comma-separated values");
  sweep->add_flag("--no-probes", no_probes, "skip probe simulations");
  auto* presets = app.add_subcommand("presets", "preset utilities");
  auto* presets_list = presets->add_subcommand("list", "list built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (presets->parsed()) {
      if (presets_list->parsed()) return cmd_presets_list();
      std::cerr << "presets: expected a subcommand (list)\n";
      return 2;
    }
    ScenarioConfig cfg = resolve_config(g);
    if (simulate->parsed()) {
      for (const auto& s : ic_strings) {
        const auto comma = s.find(',');
        if (comma == std::string::npos)
          throw ValidationError("--initial: expected 'G,T'");
        State st;
        st.G = std::stod(s.substr(0, comma));
        st.T = std::stod(s.substr(comma + 1));
        cfg.initial_conditions.push_back(st);
      }
    }
    if (orbit->parsed()) {
      if (!orbit_kind.empty()) cfg.orbit_kind = orbit_kind;
      if (orbit_samples > 0) cfg.orbit_samples = orbit_samples;
    }
    if (basin->parsed()) {
      if (nG > 0) cfg.grid.nG = nG;
      if (nT > 0) cfg.grid.nT = nT;
    }
    if (sweep->parsed() && !sweep_param.empty()) {
      ScenarioConfig tmp = cfg;
      std::string doc = "{\"parameter\": \"" + sweep_param + "\", \"values\": [" + sweep_values +
                        "], \"probes\": " + (no_probes ? "false" : "true") + "}";
      // reuse the JSON validation path for the sweep block
      std::string full = "{\"params\": " + params_to_json(cfg.params, 0) +
                         ", \"sweep\": " + doc + "}";
      ScenarioConfig parsed = parse_config_text(full);
      cfg.sweep_parameter = parsed.sweep_parameter;
      cfg.sweep_values = parsed.sweep_values;
      cfg.sweep_probes = parsed.sweep_probes;
    }
    emit_warnings(cfg);

    if (thresholds->parsed()) return cmd_thresholds(cfg);
    if (classify->parsed()) return cmd_classify(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg, scheme);
    if (orbit->parsed()) return cmd_orbit(cfg);
    if (basin->parsed()) return cmd_basin(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ExistenceError& e) {
    std::cerr << "error: existence condition violated (" << e.threshold() << "): " << e.what()
              << '\n';
    return 3;
  } catch (const BracketError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ModelError& e) {
    std::cerr << "error: numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
