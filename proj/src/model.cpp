#include "savanna/model.hpp"

#include <cmath>
#include <string>

namespace savanna {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace

void validate(const VegetationParams& p) {
  require(std::isfinite(p.gamma_G) && std::isfinite(p.delta_G0) && std::isfinite(p.K_G) &&
              std::isfinite(p.gamma_T) && std::isfinite(p.delta_T) && std::isfinite(p.K_T) &&
              std::isfinite(p.gamma_TG) && std::isfinite(p.lambda_fG) && std::isfinite(p.lambda_fT) &&
              std::isfinite(p.alpha) && std::isfinite(p.theta) && std::isfinite(p.tau),
          "params: all fields must be finite");
  require(p.delta_G0 >= 0, "delta_G0: must be >= 0");
  require(p.delta_T >= 0, "delta_T: must be >= 0");
  require(p.gamma_G > p.delta_G0, "gamma_G: net grass production gamma_G - delta_G0 must be > 0");
  require(p.gamma_T > p.delta_T, "gamma_T: net tree production gamma_T - delta_T must be > 0");
  require(p.K_G > 0, "K_G: must be > 0");
  require(p.K_T > 0, "K_T: must be > 0");
  require(p.lambda_fG >= 0 && p.lambda_fG < 1, "lambda_fG: must be in [0,1)");
  require(p.lambda_fT >= 0 && p.lambda_fT < 1, "lambda_fT: must be in [0,1)");
  require(p.alpha > 0, "alpha: must be > 0");
  require(p.theta > 0, "theta: must be > 0");
  require(p.tau > 0, "tau: must be > 0");
}

DerivedQuantities derive_quantities(const VegetationParams& p) {
  validate(p);
  DerivedQuantities d{};
  d.r_G = p.gamma_G - p.delta_G0;
  d.r_T = p.gamma_T - p.delta_T;
  d.mu_G = p.gamma_G / p.K_G;
  d.mu_T = p.gamma_T / p.K_T;
  d.X_G = d.r_G / d.mu_G;
  d.Y_T = d.r_T / d.mu_T;
  return d;
}

double fire_intensity(double grass, const VegetationParams& p) {
  if (grass < 0) throw DomainError("fire_intensity: grass biomass must be >= 0");
  if (grass == 0) return 0.0;
  const double gt = std::pow(grass, p.theta);
  return gt / (std::pow(p.alpha, p.theta) + gt);
}

double omega_argument(double post_fire_grass, const VegetationParams& p) {
  return p.omega_arg == OmegaArgConvention::BurntGrass ? p.lambda_fG * post_fire_grass
                                                       : post_fire_grass;
}

double impulse_intensity(double post_fire_grass, const VegetationParams& p) {
  return fire_intensity(omega_argument(post_fire_grass, p), p);
}

std::pair<double, double> continuous_rhs(const State& s, const VegetationParams& p) {
  if (s.G < 0 || s.T < 0) throw DomainError("continuous_rhs: state must be nonnegative");
  const double dG = p.gamma_G * s.G * (1.0 - s.G / p.K_G) - p.delta_G0 * s.G - p.gamma_TG * s.T * s.G;
  const double dT = p.gamma_T * s.T * (1.0 - s.T / p.K_T) - p.delta_T * s.T;
  return {dG, dT};
}

std::pair<State, ImpulseRecord> apply_impulse(const State& s, const VegetationParams& p) {
  if (s.G < 0 || s.T < 0) throw DomainError("apply_impulse: state must be nonnegative");
  State post;
  post.G = (1.0 - p.lambda_fG) * s.G;
  const double intensity = impulse_intensity(post.G, p);
  post.T = (1.0 - p.lambda_fT * intensity) * s.T;
  post.t = s.t;
  ImpulseRecord rec{s.t, s, post, intensity};
  return {post, rec};
}

}  // namespace savanna
