#pragma once

#include <utility>

#include "savanna/errors.hpp"

namespace savanna {

/// Which grass level the fire-intensity function omega is evaluated at when a
/// fire hits. The model's displayed impulse is
///   T+ = (1 - lambda_fT * omega(lambda_fG * G)) * T,
/// with solutions right-continuous at fire times, so G there is the post-fire
/// (burnt-down) grass level. BurntGrass keeps the lambda_fG factor inside
/// omega; StandingGrass drops it, which is the variant consistent with the
/// published threshold tables for the short-period humid scenarios.
enum class OmegaArgConvention { BurntGrass, StandingGrass };

/// Raw model parameters (units: t/ha for biomass, 1/yr for rates, yr for tau).
struct VegetationParams {
  double gamma_G = 0;    ///< grass production rate (1/yr)
  double delta_G0 = 0;   ///< grass background loss rate (1/yr)
  double K_G = 0;        ///< grass carrying capacity (t/ha)
  double gamma_T = 0;    ///< tree production rate (1/yr)
  double delta_T = 0;    ///< tree background loss rate (1/yr)
  double K_T = 0;        ///< tree carrying capacity (t/ha)
  double gamma_TG = 0;   ///< tree-on-grass competition (ha/(t*yr)); negative = facilitation
  double lambda_fG = 0;  ///< grass fraction lost per fire, in [0,1)
  double lambda_fT = 0;  ///< maximal tree fraction lost per fire, in [0,1)
  double alpha = 2;      ///< fire-intensity half-saturation (t/ha), > 0
  double theta = 2;      ///< fire-intensity steepness (dimensionless), > 0
  double tau = 1;        ///< fire period (yr), > 0
  OmegaArgConvention omega_arg = OmegaArgConvention::BurntGrass;
};

/// Quantities derived once from the raw parameters.
struct DerivedQuantities {
  double r_G;   ///< net grass production gamma_G - delta_G0
  double r_T;   ///< net tree production gamma_T - delta_T
  double mu_G;  ///< gamma_G / K_G
  double mu_T;  ///< gamma_T / K_T
  double X_G;   ///< r_G / mu_G, grass cap of the invariant region
  double Y_T;   ///< r_T / mu_T, tree cap of the invariant region
};

struct State {
  double G = 0;  ///< grass biomass (t/ha)
  double T = 0;  ///< tree biomass (t/ha)
  double t = 0;  ///< time (yr)
};

/// One fire event: state just before, just after, and the omega value applied.
struct ImpulseRecord {
  double t_n;
  State pre;
  State post;
  double intensity;
};

/// Throws ValidationError naming the offending field.
void validate(const VegetationParams& p);

/// Computes r/mu/cap quantities; rejects parameters with non-positive net production.
DerivedQuantities derive_quantities(const VegetationParams& p);

/// omega(G) = G^theta / (alpha^theta + G^theta). Rejects negative G.
double fire_intensity(double grass, const VegetationParams& p);

/// Argument handed to omega at a fire, from the post-fire grass level.
double omega_argument(double post_fire_grass, const VegetationParams& p);

/// Fraction of maximal tree loss applied by a fire that leaves post-fire grass
/// at the given level: omega(omega_argument(post_fire_grass)).
double impulse_intensity(double post_fire_grass, const VegetationParams& p);

/// Smooth vector field of the flow between fires: (dG/dt, dT/dt).
std::pair<double, double> continuous_rhs(const State& s, const VegetationParams& p);

/// Fire map: G+ = (1-lambda_fG) G, T+ = (1-lambda_fT*omega(arg(G+))) T.
std::pair<State, ImpulseRecord> apply_impulse(const State& s, const VegetationParams& p);

}  // namespace savanna
