#pragma once

#include <utility>
#include <vector>

#include "savanna/model.hpp"

namespace savanna {

/// A tau-periodic orbit of the impulsive flow, anchored at its post-fire state.
/// Orbit functions are right-continuous at fire times: the value at phase 0 is
/// the post-fire (stroboscopic fixed point) value, and the phase->tau limit of
/// the within-period flow is the pre-fire value post/(1-lambda_fG) for grass.
struct PeriodicOrbit {
  enum class Kind { Grassland, Savanna };
  struct Sample {
    double phase;
    double G;
    double T;
  };
  Kind kind;
  double G_star;  ///< post-fire grass level
  double T_star;  ///< post-fire tree level (0 for grassland)
  double tau;
  std::vector<Sample> samples;  ///< phases 0..tau, last row wraps to the post-fire value
};

/// Post-fire grass level of the grassland orbit,
/// X_G ((1-lambda_fG) e^{r_G tau} - 1) / (e^{r_G tau} - 1).
double grassland_post_fire_value(const VegetationParams& p, const DerivedQuantities& d);

/// Grassland orbit value at a phase in [0, tau); phase 0 is post-fire.
/// Throws ExistenceError when R_0,pulse^Ge <= 1.
double grassland_orbit_value(double phase, const VegetationParams& p, const DerivedQuantities& d);

PeriodicOrbit grassland_orbit(const VegetationParams& p, const DerivedQuantities& d,
                              int n_samples = 512);

/// Exact logistic tree solution over an elapsed time dt <= tau; fixed points 0
/// and Y_T are preserved exactly.
double tree_within_period(double T_start, double dt, const DerivedQuantities& d);

/// Within-period grass growth factor
/// chi(dt, T0) = exp{ r_G dt - (gamma_TG/mu_T) ln[1 + (T0/Y_T)(e^{r_T dt}-1)] }.
double chi(double dt, double T_start, const VegetationParams& p, const DerivedQuantities& d);

/// Integral of chi(u, T_start) du over [0, dt] by adaptive Simpson quadrature.
double chi_integral(double dt, double T_start, const VegetationParams& p,
                    const DerivedQuantities& d);

/// Exact within-period grass solution
/// G(dt) = G0 chi(dt,T0) / (1 + mu_G G0 Int_0^dt chi(u,T0) du).
double grass_within_period(double G_start, double T_start, double dt, const VegetationParams& p,
                           const DerivedQuantities& d);

/// Post-fire grass fixed point given a candidate post-fire tree level y:
/// phi(y) = ((1-lambda_fG) chi(tau,y) - 1) / (mu_G Int_0^tau chi(u,y) du).
double grass_fixed_point_given_tree(double y, const VegetationParams& p,
                                    const DerivedQuantities& d);

/// Stroboscopic (post-fire to post-fire) map over one period: exact within-period
/// solutions composed with the fire map.
std::pair<double, double> period_map(double G_post, double T_post, const VegetationParams& p,
                                     const DerivedQuantities& d);

/// Signed residual whose positive roots are the savanna post-fire tree levels:
/// h(y) = (y/Y_T)(e^{r_T tau}-1) + lambda_fT omega(arg(phi(y))) e^{r_T tau} - (e^{r_T tau}-1).
/// Where phi(y) <= 0 there is no feasible grass orbit and the intensity term is 0.
/// Throws DomainError outside [0, Y_T].
double h_function(double y, const VegetationParams& p, const DerivedQuantities& d);

/// Number of strict sign changes of h over an (n+1)-point uniform grid on [0, Y_T].
int h_sign_changes(const VegetationParams& p, const DerivedQuantities& d, int n = 10000);

/// Unique positive savanna fixed point via a bracketed root of h.
/// Throws ExistenceError when the threshold-level existence conditions fail and
/// BracketError when h(0) < 0 but no feasible sign change exists on [0, Y_T]
/// (the savanna orbit is absent although the pulse threshold exceeds one).
PeriodicOrbit solve_savanna_fixed_point(const VegetationParams& p, const DerivedQuantities& d,
                                        int n_samples = 512);

/// (Int_0^tau G~(u) du, Int_0^tau T~(u) du) for either orbit kind, closed forms:
/// Int T~ = (1/mu_T)[ln(1 - lambda_fT omega(arg(G*))) + r_T tau] (0 for grassland),
/// Int G~ = (1/mu_G) ln(1 + mu_G G* Int_0^tau chi(u,T*) du).
std::pair<double, double> orbit_integrals(const PeriodicOrbit& orbit, const VegetationParams& p,
                                          const DerivedQuantities& d);

}  // namespace savanna
