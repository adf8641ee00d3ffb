#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "savanna/io.hpp"
#include "savanna/presets.hpp"

namespace py = pybind11;
using namespace savanna;

namespace {

py::dict threshold_set_to_dict(const ThresholdSet& t) {
  py::dict d;
  auto put = [&](const char* k, const ThresholdValue& v) {
    if (v.kind == ThresholdValue::Kind::Value)
      d[k] = v.value;
    else
      d[k] = v.str();
  };
  put("R_01", t.R_01);
  put("R_pulse_Ge", t.R_pulse_Ge);
  put("R_tilde_R01", t.R_tilde_R01);
  put("R_pulse_star", t.R_pulse_star);
  put("R_stable_star", t.R_stable_star);
  put("R_tilde_stable_star2", t.R_tilde_stable_star2);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "impulsive tree-grass-fire dynamics: simulation, periodic orbits, "
            "stability thresholds, basin maps";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ExistenceError>(m, "ExistenceError", PyExc_RuntimeError);
  py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);

  py::enum_<OmegaArgConvention>(m, "OmegaArgConvention")
      .value("BurntGrass", OmegaArgConvention::BurntGrass)
      .value("StandingGrass", OmegaArgConvention::StandingGrass);

  py::class_<VegetationParams>(m, "VegetationParams")
      .def(py::init<>())
      .def_readwrite("gamma_G", &VegetationParams::gamma_G)
      .def_readwrite("delta_G0", &VegetationParams::delta_G0)
      .def_readwrite("K_G", &VegetationParams::K_G)
      .def_readwrite("gamma_T", &VegetationParams::gamma_T)
      .def_readwrite("delta_T", &VegetationParams::delta_T)
      .def_readwrite("K_T", &VegetationParams::K_T)
      .def_readwrite("gamma_TG", &VegetationParams::gamma_TG)
      .def_readwrite("lambda_fG", &VegetationParams::lambda_fG)
      .def_readwrite("lambda_fT", &VegetationParams::lambda_fT)
      .def_readwrite("alpha", &VegetationParams::alpha)
      .def_readwrite("theta", &VegetationParams::theta)
      .def_readwrite("tau", &VegetationParams::tau)
      .def_readwrite("omega_arg", &VegetationParams::omega_arg);

  py::class_<DerivedQuantities>(m, "DerivedQuantities")
      .def_readonly("r_G", &DerivedQuantities::r_G)
      .def_readonly("r_T", &DerivedQuantities::r_T)
      .def_readonly("mu_G", &DerivedQuantities::mu_G)
      .def_readonly("mu_T", &DerivedQuantities::mu_T)
      .def_readonly("X_G", &DerivedQuantities::X_G)
      .def_readonly("Y_T", &DerivedQuantities::Y_T);

  py::class_<State>(m, "State")
      .def(py::init<>())
      .def(py::init([](double G, double T, double t) { return State{G, T, t}; }), py::arg("G"),
           py::arg("T"), py::arg("t") = 0.0)
      .def_readwrite("G", &State::G)
      .def_readwrite("T", &State::T)
      .def_readwrite("t", &State::t)
      .def("__repr__", [](const State& s) {
        return "State(G=" + fmt17(s.G) + ", T=" + fmt17(s.T) + ", t=" + fmt17(s.t) + ")";
      });

  py::class_<ImpulseRecord>(m, "ImpulseRecord")
      .def_readonly("t_n", &ImpulseRecord::t_n)
      .def_readonly("pre", &ImpulseRecord::pre)
      .def_readonly("post", &ImpulseRecord::post)
      .def_readonly("intensity", &ImpulseRecord::intensity);

  m.def("validate", &validate);
  m.def("derive_quantities", &derive_quantities);
  m.def("fire_intensity", &fire_intensity);
  m.def("impulse_intensity", &impulse_intensity);
  m.def("continuous_rhs", &continuous_rhs);
  m.def("apply_impulse", &apply_impulse);

  py::class_<PeriodicOrbit> orbit(m, "PeriodicOrbit");
  py::enum_<PeriodicOrbit::Kind>(orbit, "Kind")
      .value("Grassland", PeriodicOrbit::Kind::Grassland)
      .value("Savanna", PeriodicOrbit::Kind::Savanna);
  orbit.def_readonly("kind", &PeriodicOrbit::kind)
      .def_readonly("G_star", &PeriodicOrbit::G_star)
      .def_readonly("T_star", &PeriodicOrbit::T_star)
      .def_readonly("tau", &PeriodicOrbit::tau)
      .def("samples", [](const PeriodicOrbit& o) {
        py::list out;
        for (const auto& s : o.samples) out.append(py::make_tuple(s.phase, s.G, s.T));
        return out;
      });

  m.def("grassland_post_fire_value", &grassland_post_fire_value);
  m.def("grassland_orbit_value", &grassland_orbit_value);
  m.def("grassland_orbit", &grassland_orbit, py::arg("p"), py::arg("d"),
        py::arg("n_samples") = 512);
  m.def("tree_within_period", &tree_within_period);
  m.def("chi", &chi);
  m.def("chi_integral", &chi_integral);
  m.def("grass_within_period", &grass_within_period);
  m.def("grass_fixed_point_given_tree", &grass_fixed_point_given_tree);
  m.def("period_map", &period_map);
  m.def("h_function", &h_function);
  m.def("h_sign_changes", &h_sign_changes, py::arg("p"), py::arg("d"), py::arg("n") = 10000);
  m.def("solve_savanna_fixed_point", &solve_savanna_fixed_point, py::arg("p"), py::arg("d"),
        py::arg("n_samples") = 512);
  m.def("orbit_integrals", &orbit_integrals);

  m.def("compute_thresholds",
        [](const VegetationParams& p, const DerivedQuantities& d) {
          ThresholdSet t = compute_thresholds(p, d);
          if (t.R_pulse_Ge.gt1() && t.R_pulse_star.gt1()) {
            try {
              const PeriodicOrbit o = solve_savanna_fixed_point(p, d, 2);
              t = compute_thresholds(p, d, &o);
            } catch (const BracketError&) {
            }
          }
          return threshold_set_to_dict(t);
        });

  py::class_<TrivialEigenvalues>(m, "TrivialEigenvalues")
      .def_readonly("rho1", &TrivialEigenvalues::rho1)
      .def_readonly("rho2", &TrivialEigenvalues::rho2)
      .def_readonly("nu1", &TrivialEigenvalues::nu1)
      .def_readonly("nu2", &TrivialEigenvalues::nu2);
  m.def("trivial_equilibria_eigenvalues", &trivial_equilibria_eigenvalues);

  py::class_<FloquetReport>(m, "FloquetReport")
      .def_readonly("lambda1", &FloquetReport::lambda1)
      .def_readonly("lambda2", &FloquetReport::lambda2)
      .def_readonly("stable", &FloquetReport::stable);
  m.def("grassland_floquet", &grassland_floquet);
  m.def("savanna_floquet", &savanna_floquet);

  m.def("classify_regime", [](const VegetationParams& p, const DerivedQuantities& d) {
    const RegimeCase rc = classify_regime(p, d);
    py::dict out;
    out["case"] = rc.case_label;
    out["boundary"] = rc.boundary;
    py::list eq;
    for (const auto& e : rc.equilibria) {
      py::dict ed;
      ed["id"] = to_string(e.id);
      ed["exists"] = e.exists;
      ed["verdict"] = to_string(e.verdict);
      eq.append(ed);
    }
    out["equilibria"] = eq;
    out["thresholds"] = threshold_set_to_dict(rc.thresholds);
    return out;
  });

  py::enum_<Scheme>(m, "Scheme").value("NSFD", Scheme::NSFD).value("Reference", Scheme::Reference);
  m.def("nsfd_step", &nsfd_step);
  m.def("reference_step", &reference_step);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("states", &Trajectory::states)
      .def_readonly("impulses", &Trajectory::impulses)
      .def_readonly("dt", &Trajectory::dt);
  m.def("run", &run, py::arg("initial"), py::arg("p"), py::arg("d"), py::arg("horizon_periods"),
        py::arg("dt"), py::arg("scheme") = Scheme::NSFD);

  py::class_<AttractorVerdict> verdict(m, "AttractorVerdict");
  py::enum_<AttractorVerdict::Kind>(verdict, "Kind")
      .value("BareSoil", AttractorVerdict::Kind::BareSoil)
      .value("Forest", AttractorVerdict::Kind::Forest)
      .value("GrasslandPeriodic", AttractorVerdict::Kind::GrasslandPeriodic)
      .value("SavannaPeriodic", AttractorVerdict::Kind::SavannaPeriodic)
      .value("Undecided", AttractorVerdict::Kind::Undecided);
  verdict.def_readonly("kind", &AttractorVerdict::kind)
      .def_readonly("final_post_fire_state", &AttractorVerdict::final_post_fire_state)
      .def_readonly("periods_to_converge", &AttractorVerdict::periods_to_converge);

  m.def("detect_attractor",
        [](const State& initial, const VegetationParams& p, const DerivedQuantities& d,
           double dt, int max_periods) {
          DetectOptions opt;
          opt.dt = dt;
          opt.max_periods = max_periods;
          return detect_attractor(initial, p, d, attractor_candidates(p, d), opt);
        },
        py::arg("initial"), py::arg("p"), py::arg("d"), py::arg("dt") = 0.0,
        py::arg("max_periods") = 2000);

  m.def("basin_map",
        [](const VegetationParams& p, const DerivedQuantities& d, int nG, int nT, double dt) {
          GridSpec grid;
          grid.nG = nG;
          grid.nT = nT;
          DetectOptions opt;
          opt.dt = dt;
          const BasinGrid b = basin_map(p, d, grid, opt);
          py::list rows;
          const size_t n_T = b.T_axis.size();
          for (size_t i = 0; i < b.G_axis.size(); ++i)
            for (size_t j = 0; j < n_T; ++j) {
              const auto& c = b.cells[i * n_T + j];
              rows.append(py::make_tuple(b.G_axis[i], b.T_axis[j], to_string(c.kind),
                                         c.periods_to_converge));
            }
          return rows;
        },
        py::arg("p"), py::arg("d"), py::arg("nG") = 50, py::arg("nT") = 50, py::arg("dt") = 0.0);

  m.def("parameter_sweep",
        [](const VegetationParams& base, const std::string& parameter,
           std::vector<double> values, bool probes) {
          SweepParameter sp;
          if (parameter == "gamma_TG")
            sp = SweepParameter::GammaTG;
          else if (parameter == "tau")
            sp = SweepParameter::Tau;
          else if (parameter == "lambda_fT")
            sp = SweepParameter::LambdaFT;
          else if (parameter == "lambda_fG")
            sp = SweepParameter::LambdaFG;
          else
            throw ValidationError("sweep parameter must be gamma_TG, tau, lambda_fT, or lambda_fG");
          SweepOptions opt;
          opt.probes = probes;
          py::list out;
          for (const SweepPoint& pt : parameter_sweep(base, sp, std::move(values), opt)) {
            py::dict row;
            row["value"] = pt.value;
            if (!pt.error.empty()) {
              row["error"] = pt.error;
            } else {
              row["case"] = pt.regime.case_label;
              row["thresholds"] = threshold_set_to_dict(pt.thresholds);
              py::list atts;
              for (const auto k : pt.probe_attractors) atts.append(to_string(k));
              row["attractors"] = atts;
            }
            out.append(row);
          }
          return out;
        },
        py::arg("base"), py::arg("parameter"), py::arg("values"), py::arg("probes") = true);

  py::class_<RegionPreset>(m, "RegionPreset")
      .def_readonly("name", &RegionPreset::name)
      .def_readonly("description", &RegionPreset::description)
      .def_readonly("params", &RegionPreset::params)
      .def_readonly("gamma_TG_panels", &RegionPreset::gamma_TG_panels);
  m.def("region_presets", &region_presets);
  m.def("find_preset", &find_preset, py::return_value_policy::reference);

#ifdef SAVANNA_VERSION
  m.attr("__version__") = SAVANNA_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
