#include "savanna/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

namespace savanna {

State nsfd_step(const State& s, double dt, const VegetationParams& p,
                const DerivedQuantities& d) {
  const double phi1 = std::expm1(d.r_G * dt) / d.r_G;
  const double phi2 = std::expm1(d.r_T * dt) / d.r_T;
  const double denomG = 1.0 + phi1 * (d.mu_G * s.G + p.gamma_TG * s.T);
  if (denomG <= 0)
    throw StepSizeError("nsfd_step: grass denominator lost positivity; reduce dt");
  State n;
  n.G = s.G * (1.0 + phi1 * d.r_G) / denomG;
  n.T = s.T * (1.0 + phi2 * d.r_T) / (1.0 + phi2 * d.mu_T * s.T);
  n.t = s.t + dt;
  return n;
}

State reference_step(const State& s, double dt, const VegetationParams& p,
                     const DerivedQuantities& d) {
  (void)d;
  auto f = [&](double G, double T) {
    State x{G, T, 0};
    return continuous_rhs(x, p);
  };
  const auto k1 = f(s.G, s.T);
  const auto k2 = f(s.G + 0.5 * dt * k1.first, s.T + 0.5 * dt * k1.second);
  const auto k3 = f(s.G + 0.5 * dt * k2.first, s.T + 0.5 * dt * k2.second);
  const auto k4 = f(s.G + dt * k3.first, s.T + dt * k3.second);
  State n;
  n.G = s.G + dt / 6.0 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first);
  n.T = s.T + dt / 6.0 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second);
  n.G = std::max(n.G, 0.0);  // round-off clamp
  n.T = std::max(n.T, 0.0);
  n.t = s.t + dt;
  return n;
}

State advance_period(State s, const VegetationParams& p, const DerivedQuantities& d, double dt,
                     Scheme scheme) {
  const double t_end = s.t + p.tau;
  const double snap = 1e-12 * p.tau;
  while (s.t < t_end - snap) {
    const double h = std::min(dt, t_end - s.t);
    s = scheme == Scheme::NSFD ? nsfd_step(s, h, p, d) : reference_step(s, h, p, d);
  }
  s.t = t_end;
  return s;
}

Trajectory run(const State& initial, const VegetationParams& p, const DerivedQuantities& d,
               int horizon_periods, double dt, Scheme scheme) {
  Trajectory traj;
  traj.dt = dt;
  traj.scheme = scheme;
  State s = initial;
  traj.states.push_back(s);
  const double snap = 1e-12 * p.tau;
  for (int n = 1; n <= horizon_periods; ++n) {
    const double t_end = initial.t + n * p.tau;
    while (s.t < t_end - snap) {
      const double h = std::min(dt, t_end - s.t);
      s = scheme == Scheme::NSFD ? nsfd_step(s, h, p, d) : reference_step(s, h, p, d);
      if (s.t > t_end - snap) s.t = t_end;
      traj.states.push_back(s);
    }
    auto [post, rec] = apply_impulse(s, p);
    traj.impulses.push_back(rec);
    s = post;
    traj.states.push_back(s);
  }
  return traj;
}

std::string to_string(AttractorVerdict::Kind k) {
  switch (k) {
    case AttractorVerdict::Kind::BareSoil: return "BareSoil";
    case AttractorVerdict::Kind::Forest: return "Forest";
    case AttractorVerdict::Kind::GrasslandPeriodic: return "GrasslandPeriodic";
    case AttractorVerdict::Kind::SavannaPeriodic: return "SavannaPeriodic";
    case AttractorVerdict::Kind::Undecided: return "Undecided";
  }
  return "?";
}

AttractorCandidates attractor_candidates(const VegetationParams& p,
                                         const DerivedQuantities& d) {
  AttractorCandidates c;
  c.Y_T = d.Y_T;
  const ThresholdSet t = compute_thresholds(p, d);
  if (t.R_pulse_Ge.gt1()) {
    c.grassland = {grassland_post_fire_value(p, d), 0.0};
    if (t.R_pulse_star.gt1()) {
      try {
        const PeriodicOrbit orbit = solve_savanna_fixed_point(p, d, 2);
        c.savanna = {orbit.G_star, orbit.T_star};
      } catch (const BracketError&) {
        // savanna absent
      }
    }
  }
  return c;
}

AttractorVerdict detect_attractor(const State& initial, const VegetationParams& p,
                                  const DerivedQuantities& d, const AttractorCandidates& cands,
                                  const DetectOptions& opt) {
  const double scale = std::max(d.X_G, d.Y_T);
  const double dt = opt.dt > 0 ? opt.dt : p.tau / 1000.0;
  const double eps_conv = opt.eps_conv > 0 ? opt.eps_conv : 1e-8 * scale;
  const double eps_match = opt.eps_match > 0 ? opt.eps_match : 1e-4 * scale;

  AttractorVerdict v;
  State s = initial;  // initial condition is the t0+ (post-fire) state
  for (int n = 1; n <= opt.max_periods; ++n) {
    State next = advance_period(s, p, d, dt, opt.scheme);
    auto [post, rec] = apply_impulse(next, p);
    const bool settled =
        std::max(std::abs(post.G - s.G), std::abs(post.T - s.T)) < eps_conv;
    s = post;
    if (settled) {
      v.final_post_fire_state = s;
      v.periods_to_converge = n;
      struct Candidate {
        AttractorVerdict::Kind kind;
        double G, T;
      };
      std::vector<Candidate> list = {
          {AttractorVerdict::Kind::BareSoil, 0.0, 0.0},
          {AttractorVerdict::Kind::Forest, 0.0, d.Y_T},
      };
      if (cands.savanna)
        list.push_back({AttractorVerdict::Kind::SavannaPeriodic, cands.savanna->first,
                        cands.savanna->second});
      if (cands.grassland)
        list.push_back({AttractorVerdict::Kind::GrasslandPeriodic, cands.grassland->first,
                        cands.grassland->second});
      double best = eps_match;
      v.kind = AttractorVerdict::Kind::Undecided;
      for (const auto& c : list) {
        const double dist = std::max(std::abs(s.G - c.G), std::abs(s.T - c.T));
        if (dist < best) {
          best = dist;
          v.kind = c.kind;
        }
      }
      return v;
    }
  }
  v.final_post_fire_state = s;
  v.periods_to_converge = opt.max_periods;
  v.kind = AttractorVerdict::Kind::Undecided;
  return v;
}

BasinGrid basin_map(const VegetationParams& p, const DerivedQuantities& d, const GridSpec& grid,
                    const DetectOptions& opt) {
  BasinGrid out;
  auto axis = [](int n, std::optional<double> lo, std::optional<double> hi, double cap) {
    std::vector<double> v(n);
    if (lo && hi) {
      for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? *lo : *lo + (*hi - *lo) * i / (n - 1);
    } else {
      for (int i = 0; i < n; ++i) v[i] = cap * (i + 0.5) / n;  // interior cell centers
    }
    return v;
  };
  out.G_axis = axis(grid.nG, grid.G_min, grid.G_max, d.X_G);
  out.T_axis = axis(grid.nT, grid.T_min, grid.T_max, d.Y_T);
  const AttractorCandidates cands = attractor_candidates(p, d);
  const size_t n_cells = static_cast<size_t>(grid.nG) * grid.nT;
  out.cells.resize(n_cells);
  // Cells are independent; fan out across workers, each writing its own slots,
  // so the result is identical to the sequential order.
  const unsigned n_workers =
      std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  auto work = [&](size_t start) {
    for (size_t k = start; k < n_cells; k += n_workers) {
      const State init{out.G_axis[k / grid.nT], out.T_axis[k % grid.nT], 0.0};
      out.cells[k] = detect_attractor(init, p, d, cands, opt);
    }
  };
  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < n_workers; ++w) workers.emplace_back(work, w);
    for (auto& t : workers) t.join();
  }
  return out;
}

std::string to_string(SweepParameter sp) {
  switch (sp) {
    case SweepParameter::GammaTG: return "gamma_TG";
    case SweepParameter::Tau: return "tau";
    case SweepParameter::LambdaFT: return "lambda_fT";
    case SweepParameter::LambdaFG: return "lambda_fG";
  }
  return "?";
}

std::vector<State> probe_initials(const DerivedQuantities& d) {
  return {
      {0.1 * d.X_G, 0.1 * d.Y_T, 0.0}, {0.5 * d.X_G, 0.5 * d.Y_T, 0.0},
      {0.9 * d.X_G, 0.9 * d.Y_T, 0.0}, {0.75 * d.X_G, 0.1 * d.Y_T, 0.0},
      {0.1 * d.X_G, 0.75 * d.Y_T, 0.0},
  };
}

std::vector<SweepPoint> parameter_sweep(const VegetationParams& base, SweepParameter swept,
                                        std::vector<double> values, const SweepOptions& opt) {
  std::sort(values.begin(), values.end());
  std::vector<SweepPoint> out;
  out.reserve(values.size());
  for (double v : values) {
    SweepPoint pt;
    pt.value = v;
    VegetationParams p = base;
    switch (swept) {
      case SweepParameter::GammaTG: p.gamma_TG = v; break;
      case SweepParameter::Tau: p.tau = v; break;
      case SweepParameter::LambdaFT: p.lambda_fT = v; break;
      case SweepParameter::LambdaFG: p.lambda_fG = v; break;
    }
    try {
      const DerivedQuantities d = derive_quantities(p);
      pt.regime = classify_regime(p, d);
      pt.thresholds = pt.regime.thresholds;
      if (opt.probes) {
        const AttractorCandidates cands = attractor_candidates(p, d);
        std::set<AttractorVerdict::Kind> kinds;
        for (const State& s : probe_initials(d))
          kinds.insert(detect_attractor(s, p, d, cands, opt.detect).kind);
        pt.probe_attractors.assign(kinds.begin(), kinds.end());
      }
    } catch (const ModelError& e) {
      pt.error = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace savanna
