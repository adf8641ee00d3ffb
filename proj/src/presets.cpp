#include "savanna/presets.hpp"

namespace savanna {

namespace {

VegetationParams make(double K_G, double gamma_G, double delta_G0, double K_T, double gamma_T,
                      double delta_T, double alpha, double tau, double lambda_fT,
                      double lambda_fG, double gamma_TG) {
  VegetationParams p;
  p.K_G = K_G;
  p.gamma_G = gamma_G;
  p.delta_G0 = delta_G0;
  p.K_T = K_T;
  p.gamma_T = gamma_T;
  p.delta_T = delta_T;
  p.alpha = alpha;
  p.theta = 2;
  p.tau = tau;
  p.lambda_fT = lambda_fT;
  p.lambda_fG = lambda_fG;
  p.gamma_TG = gamma_TG;
  return p;
}

std::vector<RegionPreset> build() {
  std::vector<RegionPreset> v;
  v.push_back({"R1", "semi-arid region, 12-year fire return",
               make(4, 0.7, 0, 14, 0.75, 0, 2, 12, 0.9, 0.5, 0.03),
               {-0.01, 0.01, 0.03, 0.051}});
  v.push_back({"R2", "mesic region, 5-year fire return",
               make(8, 1.9, 0, 30, 0.9, 0, 2, 5, 0.5, 0.6, 0.03),
               {0.01, 0.02, 0.03, 0.055}});
  v.push_back({"R2-fig4", "mesic region, stronger fire impact on trees",
               make(8, 1.5, 0, 30, 0.9, 0, 2, 2.2, 0.8, 0.5, 0.03),
               {0.01, 0.02, 0.03, 0.055}});
  v.push_back({"R3-fig5", "humid region, sub-annual fires",
               make(17, 4.5, 0, 45, 6, 0, 2, 0.6, 0.4, 0.4, 0.05),
               {0.03, 0.05, 0.07, 0.09}});
  v.push_back({"R3-fig6", "humid region, forest/grassland bistability experiment",
               make(19, 3.1, 0.1, 50, 1.5, 0.015, 2, 0.5, 0.6, 0.5, 0.09),
               {0.09}});
  v.push_back({"R3-fig7", "humid region, fire-period bifurcation experiment",
               make(19, 3.1, 0.1, 65, 1.5, 0.015, 2, 0.5, 0.6, 0.5, 0.04),
               {0.04}});
  return v;
}

}  // namespace

const std::vector<RegionPreset>& region_presets() {
  static const std::vector<RegionPreset> presets = build();
  return presets;
}

const RegionPreset& find_preset(const std::string& name) {
  for (const auto& p : region_presets())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : region_presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ValidationError("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace savanna
