#include <cmath>
#include <random>

#include "doctest.h"
#include "savanna/model.hpp"
#include "test_util.hpp"

using namespace savanna;
using testutil::preset;

TEST_CASE("derived quantities for the semi-arid preset") {
  const DerivedQuantities d = derive_quantities(testutil::r1());
  CHECK(d.r_G == 0.7);
  CHECK(d.mu_G == doctest::Approx(0.175).epsilon(1e-14));
  CHECK(d.X_G == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(d.r_T == 0.75);
  CHECK(d.mu_T == doctest::Approx(0.75 / 14.0).epsilon(1e-14));
  CHECK(d.Y_T == doctest::Approx(14.0).epsilon(1e-14));
}

TEST_CASE("zero background loss puts the caps at the carrying capacities") {
  const VegetationParams p = preset("R2");
  const DerivedQuantities d = derive_quantities(p);
  CHECK(d.X_G == doctest::Approx(p.K_G).epsilon(1e-14));
  CHECK(d.Y_T == doctest::Approx(p.K_T).epsilon(1e-14));
}

TEST_CASE("derived quantities for the humid bistability preset") {
  const DerivedQuantities d = derive_quantities(preset("R3-fig6"));
  CHECK(d.r_G == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(d.X_G == doctest::Approx(18.3871).epsilon(1e-4));
  CHECK(d.r_T == doctest::Approx(1.485).epsilon(1e-14));
  CHECK(d.Y_T == doctest::Approx(49.5).epsilon(1e-12));
}

TEST_CASE("parameter validation rejects broken inputs") {
  VegetationParams p = testutil::r1();
  SUBCASE("non-positive net grass production") {
    p.delta_G0 = p.gamma_G;
    CHECK_THROWS_AS(derive_quantities(p), ValidationError);
  }
  SUBCASE("non-positive net tree production") {
    p.delta_T = p.gamma_T + 0.1;
    CHECK_THROWS_AS(derive_quantities(p), ValidationError);
  }
  SUBCASE("lambda_fG at one") {
    p.lambda_fG = 1.0;
    CHECK_THROWS_AS(validate(p), ValidationError);
  }
  SUBCASE("lambda_fT at one") {
    p.lambda_fT = 1.0;
    CHECK_THROWS_AS(validate(p), ValidationError);
  }
  SUBCASE("alpha must be positive") {
    p.alpha = 0;
    CHECK_THROWS_AS(validate(p), ValidationError);
  }
  SUBCASE("tau must be positive") {
    p.tau = 0;
    CHECK_THROWS_AS(validate(p), ValidationError);
  }
  SUBCASE("carrying capacities must be positive") {
    p.K_T = -1;
    CHECK_THROWS_AS(validate(p), ValidationError);
  }
  SUBCASE("negative gamma_TG is accepted (facilitation)") {
    p.gamma_TG = -0.01;
    CHECK_NOTHROW(validate(p));
  }
}

TEST_CASE("fire intensity: half saturation and fixed values") {
  const VegetationParams p = testutil::r1();  // alpha=2, theta=2
  CHECK(fire_intensity(0.0, p) == 0.0);
  CHECK(fire_intensity(2.0, p) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(fire_intensity(3.2765, p) == doctest::Approx(0.72854).epsilon(1e-4));
  CHECK_THROWS_AS(fire_intensity(-0.1, p), DomainError);
}

TEST_CASE("fire intensity is strictly increasing and bounded below one") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ug(0.0, 60.0);
  std::uniform_real_distribution<double> ua(0.5, 5.0);
  for (int i = 0; i < 300; ++i) {
    VegetationParams p = testutil::r1();
    p.alpha = ua(rng);
    p.theta = ua(rng);
    double a = ug(rng), b = ug(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    const double wa = fire_intensity(a, p);
    const double wb = fire_intensity(b, p);
    CHECK(wa < wb);
    CHECK(wb < 1.0);
  }
}

TEST_CASE("smooth vector field values") {
  VegetationParams p = testutil::r1(0.03);
  const DerivedQuantities d = derive_quantities(p);
  SUBCASE("bare soil is an equilibrium") {
    auto [dG, dT] = continuous_rhs({0, 0, 0}, p);
    CHECK(dG == 0.0);
    CHECK(dT == 0.0);
  }
  SUBCASE("forest equilibrium annihilates both rates") {
    auto [dG, dT] = continuous_rhs({0, d.Y_T, 0}, p);
    CHECK(dG == 0.0);
    CHECK(dT == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("hand-evaluated interior point") {
    auto [dG, dT] = continuous_rhs({2, 7, 0}, p);
    CHECK(dG == doctest::Approx(0.28).epsilon(1e-12));
    CHECK(dT == doctest::Approx(2.625).epsilon(1e-12));
  }
}

TEST_CASE("fire map under both intensity-argument conventions") {
  // lambda_fG=0.5, G=2 burns down to G+=1; the intensity argument is the
  // post-fire level: burnt convention feeds omega(0.5*1), standing omega(1).
  VegetationParams p = testutil::r1();
  p.lambda_fG = 0.5;
  p.lambda_fT = 0.9;
  const State s{2.0, 10.0, 0.0};
  SUBCASE("burnt-grass convention") {
    p.omega_arg = OmegaArgConvention::BurntGrass;
    auto [post, rec] = apply_impulse(s, p);
    CHECK(post.G == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rec.intensity == doctest::Approx(0.25 / 4.25).epsilon(1e-14));
    CHECK(post.T == doctest::Approx(10.0 * (1.0 - 0.9 * 0.25 / 4.25)).epsilon(1e-14));
  }
  SUBCASE("standing-grass convention") {
    p.omega_arg = OmegaArgConvention::StandingGrass;
    auto [post, rec] = apply_impulse(s, p);
    CHECK(post.G == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rec.intensity == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(post.T == doctest::Approx(8.2).epsilon(1e-14));
  }
}

TEST_CASE("fire map edge cases") {
  VegetationParams p = testutil::r1();
  SUBCASE("no grass burnt means an identity impulse") {
    p.lambda_fG = 0.0;
    p.omega_arg = OmegaArgConvention::BurntGrass;
    auto [post, rec] = apply_impulse({3.0, 9.0, 1.0}, p);
    CHECK(post.G == 3.0);
    CHECK(post.T == 9.0);
    CHECK(rec.intensity == 0.0);
  }
  SUBCASE("no fuel leaves trees untouched") {
    auto [post, rec] = apply_impulse({0.0, 9.0, 1.0}, p);
    CHECK(post.G == 0.0);
    CHECK(post.T == 9.0);
    CHECK(rec.intensity == 0.0);
  }
}

TEST_CASE("fire map positivity and record consistency") {
  std::mt19937 rng(23);
  for (int i = 0; i < 300; ++i) {
    const VegetationParams p = testutil::table4_draw(rng);
    std::uniform_real_distribution<double> ug(0.0, 30.0);
    const State s{ug(rng), ug(rng), 0.0};
    auto [post, rec] = apply_impulse(s, p);
    CHECK(post.G >= 0.0);
    CHECK(post.T >= 0.0);
    if (s.G > 0) CHECK(post.G > 0.0);
    if (s.T > 0) CHECK(post.T > 0.0);
    CHECK(rec.intensity >= 0.0);
    CHECK(rec.intensity < 1.0);
    CHECK(post.G == (1.0 - p.lambda_fG) * s.G);
    CHECK(post.T == (1.0 - p.lambda_fT * rec.intensity) * s.T);
  }
}

TEST_CASE("tree impulse is determined by the pre-fire state") {
  // The grass line never depends on T; the tree loss fraction is a fixed,
  // increasing function of the pre-fire grass level.
  VegetationParams p = testutil::r1();
  const double t0 = 10.0;
  double prev_T = apply_impulse({0.0, t0, 0.0}, p).first.T;
  for (double g = 0.5; g <= 8.0; g += 0.5) {
    auto [post_a, rec_a] = apply_impulse({g, t0, 0.0}, p);
    auto [post_b, rec_b] = apply_impulse({g, 2 * t0, 0.0}, p);
    CHECK(post_a.G == post_b.G);                // G line independent of T
    CHECK(rec_a.intensity == rec_b.intensity);  // intensity independent of T
    CHECK(post_a.T < prev_T);                   // more pre-fire fuel, more tree loss
    prev_T = post_a.T;
  }
}
