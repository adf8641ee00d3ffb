#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "savanna/orbits.hpp"

namespace savanna {

/// A threshold that may be a number, +infinity, inapplicable (gamma_TG <= 0),
/// or not computable (the equilibrium it refers to is absent).
struct ThresholdValue {
  enum class Kind { Value, Infinite, NotApplicable, NotComputed };
  Kind kind = Kind::NotComputed;
  double value = 0;

  static ThresholdValue of(double v);
  static ThresholdValue infinite();
  static ThresholdValue not_applicable();
  static ThresholdValue not_computed();

  bool has_value() const { return kind == Kind::Value || kind == Kind::Infinite; }
  /// Numeric view: +inf for Infinite; only valid when has_value().
  double num() const;
  bool gt1() const { return has_value() && num() > 1.0; }
  bool lt1() const { return kind == Kind::Value && value < 1.0; }
  /// Within 1e-9 relative of the unit threshold.
  bool boundary() const { return kind == Kind::Value && std::abs(value - 1.0) <= 1e-9; }
  std::string str() const;  ///< "n/a", "-", "inf", or the number
};

struct ThresholdSet {
  ThresholdValue R_01;
  ThresholdValue R_pulse_Ge;
  ThresholdValue R_tilde_R01;
  ThresholdValue R_pulse_star;
  ThresholdValue R_stable_star;
  ThresholdValue R_tilde_stable_star2;
};

/// Table-2 thresholds. R_stable_star and R_tilde_stable_star2 need the savanna
/// orbit; without one they are reported NotComputed.
ThresholdSet compute_thresholds(const VegetationParams& p, const DerivedQuantities& d,
                                const PeriodicOrbit* savanna = nullptr);

/// Eigenvalues of the linearized stroboscopic map at the constant equilibria:
/// (rho1, rho2) at bare soil, (nu1, nu2) at the forest.
struct TrivialEigenvalues {
  double rho1;
  double rho2;
  double nu1;
  double nu2;
};
TrivialEigenvalues trivial_equilibria_eigenvalues(const VegetationParams& p,
                                                  const DerivedQuantities& d);

struct FloquetReport {
  PeriodicOrbit::Kind kind;
  double lambda1;
  double lambda2;
  bool stable;  ///< both multipliers below one in modulus
};

/// Floquet multipliers of the grassland orbit; lambda1 via the closed form
/// e^{-r_G tau}/(1-lambda_fG). Throws ExistenceError when the orbit is absent.
FloquetReport grassland_floquet(const VegetationParams& p, const DerivedQuantities& d);

/// Floquet multipliers of a savanna orbit via the closed-form orbit integrals.
FloquetReport savanna_floquet(const PeriodicOrbit& orbit, const VegetationParams& p,
                              const DerivedQuantities& d);

enum class EquilibriumId { BareSoil, Forest, GrasslandPeriodic, SavannaPeriodic };
enum class StabilityVerdict { GAS, LAS, Unstable, Unknown };

struct EquilibriumVerdict {
  EquilibriumId id;
  bool exists;
  StabilityVerdict verdict;
};

struct RegimeCase {
  std::string case_label;  ///< "I".."XV" or "DirectConditions"
  bool boundary = false;   ///< some threshold sits on the unit boundary
  std::vector<EquilibriumVerdict> equilibria;
  ThresholdSet thresholds;
  std::optional<PeriodicOrbit> savanna;  ///< filled when the fixed point exists
};

/// Matches the long-term-behaviour table rows I..XV top to bottom (blank cells
/// ignored); falls back to DirectConditions for gamma_TG <= 0, any threshold on
/// the unit boundary, or no matching row. DirectConditions verdicts come from
/// the eigenvalue/Floquet operations plus the global-stability threshold flags
/// (forest GAS iff R_pulse_Ge < 1; grassland GAS iff R_pulse_Ge > 1 and
/// R*_0,pulse < 1).
RegimeCase classify_regime(const VegetationParams& p, const DerivedQuantities& d);

std::string to_string(EquilibriumId id);
std::string to_string(StabilityVerdict v);

}  // namespace savanna
