#pragma once

#include <string>
#include <vector>

#include "savanna/model.hpp"

namespace savanna {

/// Built-in parameter sets for the three climatic regions and the bistability
/// experiments, byte-matching the published tables. gamma_TG_panels lists the
/// competition values used panel by panel; params.gamma_TG holds the preset's
/// default (the table value where the table has one, else a canonical panel).
struct RegionPreset {
  std::string name;
  std::string description;
  VegetationParams params;
  std::vector<double> gamma_TG_panels;
};

const std::vector<RegionPreset>& region_presets();

/// Throws ValidationError for unknown names.
const RegionPreset& find_preset(const std::string& name);

}  // namespace savanna
