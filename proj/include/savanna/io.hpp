#pragma once

#include <optional>
#include <string>
#include <vector>

#include "savanna/simulate.hpp"

namespace savanna {

/// A parsed scenario: parameters plus the command-specific blocks. Unknown
/// JSON keys are rejected.
struct ScenarioConfig {
  VegetationParams params;
  std::vector<State> initial_conditions;
  int horizon = 50;
  double dt = 0;  ///< 0 = tau/1000
  std::string out_dir = ".";
  GridSpec grid;
  std::optional<SweepParameter> sweep_parameter;
  std::vector<double> sweep_values;
  bool sweep_probes = true;
  std::string orbit_kind = "auto";  ///< auto | grassland | savanna
  int orbit_samples = 512;
  std::vector<std::string> warnings;  ///< out-of-range notes, never fatal
};

ScenarioConfig parse_config_text(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);

/// %.17g formatting used for every number the tool emits.
std::string fmt17(double v);

std::string params_to_json(const VegetationParams& p, int indent = 2);

/// Reproduction document: a re-ingestable config plus a meta block.
std::string reproduction_json(const ScenarioConfig& cfg, const std::string& command,
                              const std::string& extra_json_fields = "");

std::string thresholds_to_json(const ThresholdSet& t, const VegetationParams& p);
std::string regime_to_json(const RegimeCase& rc, const VegetationParams& p);

std::string trajectory_to_csv(const Trajectory& traj);
std::string orbit_to_csv(const PeriodicOrbit& orbit);
std::string basin_to_csv(const BasinGrid& grid);
std::string sweep_to_csv(const std::vector<SweepPoint>& points);

void write_file(const std::string& path, const std::string& content);

}  // namespace savanna
