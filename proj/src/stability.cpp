#include "savanna/stability.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace savanna {

ThresholdValue ThresholdValue::of(double v) { return {Kind::Value, v}; }
ThresholdValue ThresholdValue::infinite() { return {Kind::Infinite, 0}; }
ThresholdValue ThresholdValue::not_applicable() { return {Kind::NotApplicable, 0}; }
ThresholdValue ThresholdValue::not_computed() { return {Kind::NotComputed, 0}; }

double ThresholdValue::num() const {
  return kind == Kind::Infinite ? std::numeric_limits<double>::infinity() : value;
}

std::string ThresholdValue::str() const {
  switch (kind) {
    case Kind::Infinite: return "inf";
    case Kind::NotApplicable: return "n/a";
    case Kind::NotComputed: return "-";
    case Kind::Value: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", value);
      return buf;
    }
  }
  return "-";
}

namespace {

double log_inverse_survival(double fraction) {
  // ln(1/(1-x)) for x in [0,1)
  return -std::log1p(-fraction);
}

ThresholdValue pulse_threshold(double rate, double fraction, double tau) {
  const double loss = log_inverse_survival(fraction);
  if (loss == 0.0) return ThresholdValue::infinite();
  return ThresholdValue::of(rate / (loss / tau));
}

}  // namespace

ThresholdSet compute_thresholds(const VegetationParams& p, const DerivedQuantities& d,
                                const PeriodicOrbit* savanna) {
  ThresholdSet t;
  t.R_pulse_Ge = pulse_threshold(d.r_G, p.lambda_fG, p.tau);

  if (p.gamma_TG > 0)
    t.R_01 = ThresholdValue::of((d.r_G / d.r_T) * (d.mu_T / p.gamma_TG));
  else
    t.R_01 = ThresholdValue::not_applicable();

  if (t.R_01.kind == ThresholdValue::Kind::Value && t.R_pulse_Ge.has_value()) {
    const double factor = 1.0 - 1.0 / t.R_01.value;
    if (t.R_pulse_Ge.kind == ThresholdValue::Kind::Infinite)
      t.R_tilde_R01 = factor > 0   ? ThresholdValue::infinite()
                      : factor < 0 ? ThresholdValue::of(-std::numeric_limits<double>::infinity())
                                   : ThresholdValue::of(0.0);
    else
      t.R_tilde_R01 = ThresholdValue::of(t.R_pulse_Ge.value * factor);
  } else {
    t.R_tilde_R01 = ThresholdValue::not_applicable();
  }

  if (t.R_pulse_Ge.gt1()) {
    const double ge = grassland_post_fire_value(p, d);
    t.R_pulse_star = pulse_threshold(d.r_T, p.lambda_fT * impulse_intensity(ge, p), p.tau);
  } else {
    t.R_pulse_star = ThresholdValue::not_computed();
  }

  if (savanna) {
    t.R_stable_star =
        pulse_threshold(d.r_T, p.lambda_fT * impulse_intensity(savanna->G_star, p), p.tau);
    const auto [int_G, int_T] = orbit_integrals(*savanna, p, d);
    // Raw form of (1/R_01)(1 - 1/R_stable_star) + 1/R_pulse_Ge + (2/X_G)(1/tau) Int G~,
    // valid for any sign of gamma_TG.
    const double inv_Rp = t.R_pulse_Ge.kind == ThresholdValue::Kind::Infinite
                              ? 0.0
                              : 1.0 / t.R_pulse_Ge.value;
    t.R_tilde_stable_star2 = ThresholdValue::of((p.gamma_TG / (d.r_G * p.tau)) * int_T + inv_Rp +
                                                (2.0 / (d.X_G * p.tau)) * int_G);
  } else {
    t.R_stable_star = ThresholdValue::not_computed();
    t.R_tilde_stable_star2 = ThresholdValue::not_computed();
  }
  return t;
}

TrivialEigenvalues trivial_equilibria_eigenvalues(const VegetationParams& p,
                                                  const DerivedQuantities& d) {
  TrivialEigenvalues e{};
  e.rho1 = (1.0 - p.lambda_fG) * std::exp(d.r_G * p.tau);
  e.rho2 = std::exp(d.r_T * p.tau);
  // Raw exponential form, valid for any sign of gamma_TG.
  e.nu1 = (1.0 - p.lambda_fG) * std::exp(d.r_G * p.tau - (p.gamma_TG / d.mu_T) * d.r_T * p.tau);
  e.nu2 = std::exp(-d.r_T * p.tau);
  return e;
}

FloquetReport grassland_floquet(const VegetationParams& p, const DerivedQuantities& d) {
  FloquetReport r{};
  r.kind = PeriodicOrbit::Kind::Grassland;
  const double ge = grassland_post_fire_value(p, d);
  if (!(ge > 0))
    throw ExistenceError("R_0,pulse_Ge", "grassland orbit does not exist: R_0,pulse_Ge <= 1");
  r.lambda1 = std::exp(-d.r_G * p.tau) / (1.0 - p.lambda_fG);
  r.lambda2 = (1.0 - p.lambda_fT * impulse_intensity(ge, p)) * std::exp(d.r_T * p.tau);
  r.stable = std::abs(r.lambda1) < 1.0 && std::abs(r.lambda2) < 1.0;
  return r;
}

FloquetReport savanna_floquet(const PeriodicOrbit& orbit, const VegetationParams& p,
                              const DerivedQuantities& d) {
  if (orbit.kind != PeriodicOrbit::Kind::Savanna)
    throw DomainError("savanna_floquet: orbit is not a savanna orbit");
  FloquetReport r{};
  r.kind = PeriodicOrbit::Kind::Savanna;
  const auto [int_G, int_T] = orbit_integrals(orbit, p, d);
  r.lambda1 = (1.0 - p.lambda_fG) *
              std::exp(d.r_G * p.tau - 2.0 * d.mu_G * int_G - p.gamma_TG * int_T);
  const double survive = 1.0 - p.lambda_fT * impulse_intensity(orbit.G_star, p);
  r.lambda2 = std::exp(-(d.r_T * p.tau + std::log(survive)));
  r.stable = std::abs(r.lambda1) < 1.0 && std::abs(r.lambda2) < 1.0;
  return r;
}

namespace {

enum class Cell { Any, LT1, GT1, LE1, GE1 };
enum class Savanna { Any, Present, Absent };

bool cell_match(Cell c, const ThresholdValue& v) {
  switch (c) {
    case Cell::Any: return true;
    case Cell::LT1: return v.has_value() && v.num() < 1.0;
    case Cell::GT1: return v.has_value() && v.num() > 1.0;
    case Cell::LE1: return v.has_value() && v.num() <= 1.0;
    case Cell::GE1: return v.has_value() && v.num() >= 1.0;
  }
  return false;
}

struct Row {
  const char* label;
  Cell R01, Rp, Rt01, Rstar, Rs, Rss;
  Savanna savanna;
  // verdicts: BareSoil, Forest, Grassland, Savanna (Unknown = not listed in the row)
  StabilityVerdict e00, e01, e10, e11;
};

constexpr StabilityVerdict GAS = StabilityVerdict::GAS;
constexpr StabilityVerdict LAS = StabilityVerdict::LAS;
constexpr StabilityVerdict UNS = StabilityVerdict::Unstable;
constexpr StabilityVerdict UNK = StabilityVerdict::Unknown;

// Long-term-behaviour table, tried top to bottom; blank cells are Any.
const std::array<Row, 17> kRows = {{
    {"I", Cell::LT1, Cell::LT1, Cell::Any, Cell::Any, Cell::Any, Cell::Any, Savanna::Any,
     UNS, GAS, UNK, UNK},
    {"II", Cell::LT1, Cell::GT1, Cell::Any, Cell::LT1, Cell::Any, Cell::Any, Savanna::Any,
     UNS, LAS, LAS, UNK},
    {"III", Cell::LT1, Cell::GT1, Cell::Any, Cell::GT1, Cell::GT1, Cell::GT1, Savanna::Present,
     UNS, LAS, UNS, LAS},
    {"IV", Cell::LT1, Cell::GT1, Cell::Any, Cell::GT1, Cell::GT1, Cell::LT1, Savanna::Present,
     UNS, GAS, UNS, UNS},
    {"IV", Cell::LT1, Cell::GT1, Cell::Any, Cell::GT1, Cell::LT1, Cell::Any, Savanna::Present,
     UNS, GAS, UNS, UNS},
    {"V", Cell::LT1, Cell::GT1, Cell::Any, Cell::GT1, Cell::Any, Cell::Any, Savanna::Absent,
     UNS, GAS, UNS, UNK},
    {"VI", Cell::GE1, Cell::LT1, Cell::Any, Cell::Any, Cell::Any, Cell::Any, Savanna::Any,
     UNS, GAS, UNK, UNK},
    {"VII", Cell::GE1, Cell::GT1, Cell::LE1, Cell::LT1, Cell::Any, Cell::Any, Savanna::Any,
     UNS, LAS, LAS, UNK},
    {"VIII", Cell::GE1, Cell::GT1, Cell::LE1, Cell::GT1, Cell::GT1, Cell::GT1, Savanna::Present,
     UNS, LAS, UNS, LAS},
    {"IX", Cell::GE1, Cell::GT1, Cell::LE1, Cell::GT1, Cell::GT1, Cell::LT1, Savanna::Present,
     UNS, GAS, UNS, UNS},
    {"IX", Cell::GE1, Cell::GT1, Cell::LE1, Cell::GT1, Cell::LT1, Cell::Any, Savanna::Present,
     UNS, GAS, UNS, UNS},
    {"X", Cell::GE1, Cell::GT1, Cell::LE1, Cell::GT1, Cell::Any, Cell::Any, Savanna::Absent,
     UNS, GAS, UNS, UNK},
    {"XII", Cell::GE1, Cell::GT1, Cell::GT1, Cell::LT1, Cell::Any, Cell::Any, Savanna::Any,
     UNS, UNS, GAS, UNK},
    {"XIII", Cell::GE1, Cell::GT1, Cell::GT1, Cell::GT1, Cell::GT1, Cell::GT1, Savanna::Present,
     UNS, UNS, UNS, GAS},
    // XIV as printed in the table (forest column carries the GAS mark).
    {"XIV", Cell::GE1, Cell::GT1, Cell::GT1, Cell::GT1, Cell::GT1, Cell::LT1, Savanna::Present,
     UNS, GAS, UNS, UNS},
    {"XIV", Cell::GE1, Cell::GT1, Cell::GT1, Cell::GT1, Cell::LT1, Cell::Any, Savanna::Present,
     UNS, GAS, UNS, UNS},
    {"XV", Cell::GE1, Cell::GT1, Cell::GT1, Cell::GT1, Cell::Any, Cell::Any, Savanna::Absent,
     UNS, UNS, GAS, UNK},
}};

bool any_boundary(const ThresholdSet& t) {
  return t.R_01.boundary() || t.R_pulse_Ge.boundary() || t.R_tilde_R01.boundary() ||
         t.R_pulse_star.boundary() || t.R_stable_star.boundary() ||
         t.R_tilde_stable_star2.boundary();
}

}  // namespace

std::string to_string(EquilibriumId id) {
  switch (id) {
    case EquilibriumId::BareSoil: return "BareSoil";
    case EquilibriumId::Forest: return "Forest";
    case EquilibriumId::GrasslandPeriodic: return "GrasslandPeriodic";
    case EquilibriumId::SavannaPeriodic: return "SavannaPeriodic";
  }
  return "?";
}

std::string to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::GAS: return "GAS";
    case StabilityVerdict::LAS: return "LAS";
    case StabilityVerdict::Unstable: return "Unstable";
    case StabilityVerdict::Unknown: return "Unknown";
  }
  return "?";
}

RegimeCase classify_regime(const VegetationParams& p, const DerivedQuantities& d) {
  RegimeCase rc;

  std::optional<PeriodicOrbit> savanna;
  ThresholdSet t = compute_thresholds(p, d);
  if (t.R_pulse_Ge.gt1() && t.R_pulse_star.gt1()) {
    try {
      savanna = solve_savanna_fixed_point(p, d);
      t = compute_thresholds(p, d, &*savanna);
    } catch (const BracketError&) {
      // Pulse threshold exceeds one but no feasible root: savanna absent (rows V/X/XV).
    }
  }
  rc.thresholds = t;
  rc.savanna = savanna;

  const bool grassland_exists = t.R_pulse_Ge.gt1();
  const bool savanna_exists = savanna.has_value();

  auto set_verdicts = [&](StabilityVerdict e00, StabilityVerdict e01, StabilityVerdict e10,
                          StabilityVerdict e11) {
    rc.equilibria = {
        {EquilibriumId::BareSoil, true, e00},
        {EquilibriumId::Forest, true, e01},
        {EquilibriumId::GrasslandPeriodic, grassland_exists,
         grassland_exists ? e10 : StabilityVerdict::Unknown},
        {EquilibriumId::SavannaPeriodic, savanna_exists,
         savanna_exists ? e11 : StabilityVerdict::Unknown},
    };
  };

  const bool direct = p.gamma_TG <= 0 || any_boundary(t);
  if (!direct) {
    for (const Row& row : kRows) {
      if (!cell_match(row.R01, t.R_01) || !cell_match(row.Rp, t.R_pulse_Ge) ||
          !cell_match(row.Rt01, t.R_tilde_R01) || !cell_match(row.Rstar, t.R_pulse_star) ||
          !cell_match(row.Rs, t.R_stable_star) || !cell_match(row.Rss, t.R_tilde_stable_star2))
        continue;
      if (row.savanna == Savanna::Present && !savanna_exists) continue;
      if (row.savanna == Savanna::Absent && savanna_exists) continue;
      rc.case_label = row.label;
      set_verdicts(row.e00, row.e01, row.e10, row.e11);
      return rc;
    }
  }

  // Direct eigenvalue/Floquet conditions plus the global-stability flags.
  rc.case_label = "DirectConditions";
  rc.boundary = any_boundary(t);
  const TrivialEigenvalues eig = trivial_equilibria_eigenvalues(p, d);
  StabilityVerdict e01 = eig.nu1 < 1.0 ? StabilityVerdict::LAS : StabilityVerdict::Unstable;
  if (!grassland_exists) e01 = StabilityVerdict::GAS;  // forest GAS when R_pulse_Ge < 1
  StabilityVerdict e10 = StabilityVerdict::Unknown;
  if (grassland_exists) {
    const FloquetReport gf = grassland_floquet(p, d);
    // Grassland GAS when R_pulse_Ge > 1 and R*_0,pulse < 1 (comparison-theorem flag).
    e10 = gf.stable ? StabilityVerdict::GAS : StabilityVerdict::Unstable;
  }
  StabilityVerdict e11 = StabilityVerdict::Unknown;
  if (savanna_exists) {
    const FloquetReport sf = savanna_floquet(*savanna, p, d);
    e11 = sf.stable ? StabilityVerdict::LAS : StabilityVerdict::Unstable;
  }
  set_verdicts(StabilityVerdict::Unstable, e01, e10, e11);
  return rc;
}

}  // namespace savanna
