#include "savanna/orbits.hpp"

#include <cmath>
#include <limits>

#include "savanna/numerics.hpp"

namespace savanna {

namespace {

double pulse_grass_threshold(const VegetationParams& p, const DerivedQuantities& d) {
  if (p.lambda_fG == 0) return std::numeric_limits<double>::infinity();
  return d.r_G / ((1.0 / p.tau) * std::log(1.0 / (1.0 - p.lambda_fG)));
}

double quad_tol(const VegetationParams& p, const DerivedQuantities& d) {
  return 1e-12 * std::exp(d.r_G * p.tau);
}

}  // namespace

double grassland_post_fire_value(const VegetationParams& p, const DerivedQuantities& d) {
  const double E = std::exp(d.r_G * p.tau);
  return d.X_G * ((1.0 - p.lambda_fG) * E - 1.0) / (E - 1.0);
}

double grassland_orbit_value(double phase, const VegetationParams& p,
                             const DerivedQuantities& d) {
  if (pulse_grass_threshold(p, d) <= 1.0)
    throw ExistenceError("R_0,pulse_Ge",
                         "grassland orbit does not exist: R_0,pulse_Ge <= 1");
  const double E = std::exp(d.r_G * p.tau);
  const double A = (1.0 - p.lambda_fG) * E - 1.0;
  const double e = std::exp(d.r_G * phase);
  return d.X_G * A * e / (A * e + p.lambda_fG * E);
}

PeriodicOrbit grassland_orbit(const VegetationParams& p, const DerivedQuantities& d,
                              int n_samples) {
  PeriodicOrbit orbit;
  orbit.kind = PeriodicOrbit::Kind::Grassland;
  orbit.G_star = grassland_orbit_value(0.0, p, d);
  orbit.T_star = 0.0;
  orbit.tau = p.tau;
  orbit.samples.reserve(n_samples + 1);
  for (int k = 0; k < n_samples; ++k) {
    const double phase = p.tau * k / n_samples;
    orbit.samples.push_back({phase, grassland_orbit_value(phase, p, d), 0.0});
  }
  orbit.samples.push_back({p.tau, orbit.G_star, 0.0});  // right-continuous wrap
  return orbit;
}

double tree_within_period(double T_start, double dt, const DerivedQuantities& d) {
  if (T_start == 0.0) return 0.0;
  const double em = std::expm1(d.r_T * dt);
  return T_start * (em + 1.0) / (1.0 + (T_start / d.Y_T) * em);
}

double chi(double dt, double T_start, const VegetationParams& p, const DerivedQuantities& d) {
  const double em = std::expm1(d.r_T * dt);
  return std::exp(d.r_G * dt - (p.gamma_TG / d.mu_T) * std::log1p((T_start / d.Y_T) * em));
}

double chi_integral(double dt, double T_start, const VegetationParams& p,
                    const DerivedQuantities& d) {
  if (dt == 0.0) return 0.0;
  if (T_start == 0.0 || p.gamma_TG == 0.0) return std::expm1(d.r_G * dt) / d.r_G;
  return integrate_adaptive_simpson(
      [&](double u) { return chi(u, T_start, p, d); }, 0.0, dt, quad_tol(p, d));
}

double grass_within_period(double G_start, double T_start, double dt, const VegetationParams& p,
                           const DerivedQuantities& d) {
  if (G_start == 0.0) return 0.0;
  return G_start * chi(dt, T_start, p, d) /
         (1.0 + d.mu_G * G_start * chi_integral(dt, T_start, p, d));
}

double grass_fixed_point_given_tree(double y, const VegetationParams& p,
                                    const DerivedQuantities& d) {
  return ((1.0 - p.lambda_fG) * chi(p.tau, y, p, d) - 1.0) /
         (d.mu_G * chi_integral(p.tau, y, p, d));
}

std::pair<double, double> period_map(double G_post, double T_post, const VegetationParams& p,
                                     const DerivedQuantities& d) {
  State pre;
  pre.G = grass_within_period(G_post, T_post, p.tau, p, d);
  pre.T = tree_within_period(T_post, p.tau, d);
  pre.t = p.tau;
  auto [next, rec] = apply_impulse(pre, p);
  return {next.G, next.T};
}

double h_function(double y, const VegetationParams& p, const DerivedQuantities& d) {
  if (y < 0 || y > d.Y_T) throw DomainError("h_function: y must lie in [0, Y_T]");
  const double E = std::exp(d.r_T * p.tau);
  const double f = grass_fixed_point_given_tree(y, p, d);
  const double w = f > 0 ? impulse_intensity(f, p) : 0.0;
  return (y / d.Y_T) * (E - 1.0) + p.lambda_fT * w * E - (E - 1.0);
}

int h_sign_changes(const VegetationParams& p, const DerivedQuantities& d, int n) {
  int changes = 0;
  double prev = h_function(0.0, p, d);
  for (int k = 1; k <= n; ++k) {
    const double y = k == n ? d.Y_T : d.Y_T * k / n;
    const double cur = h_function(y, p, d);
    if (prev != 0.0 && cur != 0.0 && (prev > 0) != (cur > 0)) ++changes;
    if (cur != 0.0) prev = cur;
  }
  return changes;
}

PeriodicOrbit solve_savanna_fixed_point(const VegetationParams& p, const DerivedQuantities& d,
                                        int n_samples) {
  if (pulse_grass_threshold(p, d) <= 1.0)
    throw ExistenceError("R_0,pulse_Ge",
                         "savanna orbit requires the grassland orbit: R_0,pulse_Ge <= 1");

  double T_star;
  if (p.lambda_fT == 0.0) {
    // h reduces to (y/Y_T - 1)(e^{r_T tau}-1): fire is harmless to trees, T* = Y_T.
    T_star = d.Y_T;
  } else {
    const double h0 = h_function(0.0, p, d);
    if (h0 >= 0.0)
      throw ExistenceError("R*_0,pulse", "savanna orbit does not exist: R*_0,pulse <= 1");
    const int n_scan = 4096;
    int hit = -1;
    double prev = h0;
    for (int k = 1; k <= n_scan; ++k) {
      const double y = k == n_scan ? d.Y_T : d.Y_T * k / n_scan;
      const double cur = h_function(y, p, d);
      if ((prev < 0) && (cur > 0)) {
        hit = k;
        break;
      }
      prev = cur;
    }
    if (hit < 0)
      throw BracketError(
          "h(0) < 0 but h never becomes positive on [0, Y_T]: no feasible savanna orbit "
          "(grass fixed point phi(y) loses positivity before h can cross)");
    const double lo = d.Y_T * (hit - 1) / n_scan;
    const double hi = hit == n_scan ? d.Y_T : d.Y_T * hit / n_scan;
    T_star = find_root_bracketed([&](double y) { return h_function(y, p, d); }, lo, hi,
                                 1e-12 * d.Y_T);
  }

  const double G_star = grass_fixed_point_given_tree(T_star, p, d);
  if (!(G_star > 0))
    throw BracketError("savanna root has non-positive grass fixed point phi(T*)");

  PeriodicOrbit orbit;
  orbit.kind = PeriodicOrbit::Kind::Savanna;
  orbit.G_star = G_star;
  orbit.T_star = T_star;
  orbit.tau = p.tau;
  orbit.samples.reserve(n_samples + 1);
  for (int k = 0; k < n_samples; ++k) {
    const double phase = p.tau * k / n_samples;
    orbit.samples.push_back({phase, grass_within_period(G_star, T_star, phase, p, d),
                             tree_within_period(T_star, phase, d)});
  }
  orbit.samples.push_back({p.tau, G_star, T_star});  // right-continuous wrap
  return orbit;
}

std::pair<double, double> orbit_integrals(const PeriodicOrbit& orbit, const VegetationParams& p,
                                          const DerivedQuantities& d) {
  const double int_G =
      (1.0 / d.mu_G) *
      std::log1p(d.mu_G * orbit.G_star * chi_integral(p.tau, orbit.T_star, p, d));
  double int_T = 0.0;
  if (orbit.kind == PeriodicOrbit::Kind::Savanna) {
    int_T = (1.0 / d.mu_T) *
            (std::log(1.0 - p.lambda_fT * impulse_intensity(orbit.G_star, p)) + d.r_T * p.tau);
  }
  return {int_G, int_T};
}

}  // namespace savanna
