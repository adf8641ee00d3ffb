#pragma once

#include <optional>
#include <string>
#include <vector>

#include "savanna/stability.hpp"

namespace savanna {

enum class Scheme { NSFD, Reference };

/// Time-ordered states with fire events; post-impulse states equal
/// apply_impulse of the pre-impulse states exactly.
struct Trajectory {
  std::vector<State> states;
  std::vector<ImpulseRecord> impulses;
  double dt;
  Scheme scheme;
};

/// One step of the nonstandard scheme with denominator functions
/// phi_i = (e^{r_i dt}-1)/r_i; exact for the tree equation, and exact for the
/// grass equation when gamma_TG = 0. Throws StepSizeError if the grass
/// denominator loses positivity (possible only for gamma_TG < 0 with huge dt).
State nsfd_step(const State& s, double dt, const VegetationParams& p,
                const DerivedQuantities& d);

/// Classical 4th-order step on the smooth vector field; tiny negative
/// round-off is clamped to zero.
State reference_step(const State& s, double dt, const VegetationParams& p,
                     const DerivedQuantities& d);

/// Advances a state over one fire-free period [0, tau) in substeps of dt, the
/// last substep snapped so the period ends exactly at tau.
State advance_period(State s, const VegetationParams& p, const DerivedQuantities& d, double dt,
                     Scheme scheme);

/// Full impulsive run: horizon periods of smooth flow, each followed by the
/// fire map applied to the pre-fire state. Records every substep.
Trajectory run(const State& initial, const VegetationParams& p, const DerivedQuantities& d,
               int horizon_periods, double dt, Scheme scheme = Scheme::NSFD);

struct AttractorVerdict {
  enum class Kind { BareSoil, Forest, GrasslandPeriodic, SavannaPeriodic, Undecided };
  Kind kind = Kind::Undecided;
  State final_post_fire_state;
  int periods_to_converge = 0;
};

std::string to_string(AttractorVerdict::Kind k);

/// Candidate post-fire equilibrium states an attractor search matches against.
struct AttractorCandidates {
  std::optional<std::pair<double, double>> grassland;  ///< (G~e(tau), 0)
  std::optional<std::pair<double, double>> savanna;    ///< (G*, T*)
  double Y_T = 0;
};
AttractorCandidates attractor_candidates(const VegetationParams& p, const DerivedQuantities& d);

struct DetectOptions {
  double dt = 0;            ///< 0 = tau/1000
  int max_periods = 2000;
  double eps_conv = 0;      ///< 0 = 1e-8 * max(X_G, Y_T)
  double eps_match = 0;     ///< 0 = 1e-4 * max(X_G, Y_T)
  Scheme scheme = Scheme::NSFD;
};

/// Runs until consecutive post-fire states settle below eps_conv, then matches
/// the settled state against the known equilibria within eps_match.
AttractorVerdict detect_attractor(const State& initial, const VegetationParams& p,
                                  const DerivedQuantities& d, const AttractorCandidates& cands,
                                  const DetectOptions& opt = {});

struct GridSpec {
  int nG = 50;
  int nT = 50;
  /// Explicit bounds; when absent the axes are interior cell centers of
  /// [0, X_G] x [0, Y_T].
  std::optional<double> G_min, G_max, T_min, T_max;
};

struct BasinGrid {
  std::vector<double> G_axis;
  std::vector<double> T_axis;
  std::vector<AttractorVerdict> cells;  ///< row-major: cells[i*nT + j] for (G_i, T_j)
};

/// Attractor verdict per grid cell; deterministic for given inputs.
BasinGrid basin_map(const VegetationParams& p, const DerivedQuantities& d, const GridSpec& grid,
                    const DetectOptions& opt = {});

enum class SweepParameter { GammaTG, Tau, LambdaFT, LambdaFG };
std::string to_string(SweepParameter sp);

struct SweepPoint {
  double value;
  ThresholdSet thresholds;
  RegimeCase regime;
  std::vector<AttractorVerdict::Kind> probe_attractors;  ///< deduplicated, enum order
  std::string error;  ///< nonempty when this value failed; sweep continues
};

struct SweepOptions {
  bool probes = true;
  DetectOptions detect;
};

/// Thresholds + classification (+ optionally probe-simulated attractors) per
/// swept value, ordered by the swept value.
std::vector<SweepPoint> parameter_sweep(const VegetationParams& base, SweepParameter swept,
                                        std::vector<double> values, const SweepOptions& opt = {});

/// The fixed probe initial conditions used by sweeps, as fractions of the
/// invariant-region caps.
std::vector<State> probe_initials(const DerivedQuantities& d);

}  // namespace savanna
