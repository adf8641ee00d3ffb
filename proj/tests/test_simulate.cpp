#include <cmath>
#include <random>

#include "doctest.h"
#include "savanna/simulate.hpp"
#include "test_util.hpp"

using namespace savanna;
using testutil::preset;

namespace {

double logistic(double x0, double cap, double rate, double dt) {
  const double e = std::exp(rate * dt);
  return x0 * e / (1.0 + (x0 / cap) * (e - 1.0));
}

}  // namespace

TEST_CASE("nonstandard step is exact for the decoupled dynamics") {
  VegetationParams p = preset("R2");
  p.gamma_TG = 0.0;
  const DerivedQuantities d = derive_quantities(p);
  for (double dt : {p.tau, p.tau / 2, p.tau / 10, 0.37}) {
    const State s = nsfd_step({1.7, 11.0, 0.0}, dt, p, d);
    CHECK(s.G == doctest::Approx(logistic(1.7, d.X_G, d.r_G, dt)).epsilon(1e-13));
    CHECK(s.T == doctest::Approx(logistic(11.0, d.Y_T, d.r_T, dt)).epsilon(1e-13));
  }
}

TEST_CASE("nonstandard step preserves the decoupled equilibria for any dt") {
  VegetationParams p = preset("R2");
  p.gamma_TG = 0.0;
  const DerivedQuantities d = derive_quantities(p);
  for (double dt : {0.01, 1.0, 40.0}) {
    for (const State s0 : {State{d.X_G, 0, 0}, State{0, d.Y_T, 0}, State{d.X_G, d.Y_T, 0},
                           State{0, 0, 0}}) {
      const State s = nsfd_step(s0, dt, p, d);
      CHECK(s.G == doctest::Approx(s0.G).epsilon(1e-14));
      CHECK(s.T == doctest::Approx(s0.T).epsilon(1e-14));
    }
  }
}

TEST_CASE("nonstandard step rejects denominator loss under facilitation") {
  const VegetationParams p = testutil::r1(-0.01);
  const DerivedQuantities d = derive_quantities(p);
  // Facilitation dominating self-competition plus an absurd step empties the
  // denominator; a sane step does not.
  CHECK_THROWS_AS(nsfd_step({0.01, 14.0, 0.0}, 60.0, p, d), StepSizeError);
  CHECK_NOTHROW(nsfd_step({0.01, 14.0, 0.0}, 0.012, p, d));
}

TEST_CASE("reference step basics") {
  const VegetationParams p = preset("R2");
  const DerivedQuantities d = derive_quantities(p);
  const State z = reference_step({0, 0, 0}, 0.1, p, d);
  CHECK(z.G == 0.0);
  CHECK(z.T == 0.0);

  SUBCASE("fourth-order convergence against the logistic solution") {
    VegetationParams q = preset("R2");
    q.gamma_TG = 0.0;
    const DerivedQuantities dq = derive_quantities(q);
    auto run_err = [&](double dt) {
      State s{1.7, 11.0, 0.0};
      const int n = static_cast<int>(std::lround(1.0 / dt));
      for (int k = 0; k < n; ++k) s = reference_step(s, dt, q, dq);
      return std::abs(s.G - logistic(1.7, dq.X_G, dq.r_G, 1.0));
    };
    const double e2 = run_err(1e-2);
    const double e3 = run_err(1e-3);
    const double slope = std::log10(e2 / e3);
    CHECK(slope > 3.5);
    CHECK(slope < 4.5);
  }
}

TEST_CASE("schemes agree over one period on the mesic preset") {
  const VegetationParams p = preset("R2");
  const DerivedQuantities d = derive_quantities(p);
  State a{0.5 * d.X_G, 0.5 * d.Y_T, 0.0};
  State b = a;
  a = advance_period(a, p, d, 1e-3, Scheme::NSFD);
  b = advance_period(b, p, d, 1e-4, Scheme::Reference);
  const double scale = std::max(d.X_G, d.Y_T);
  CHECK(std::abs(a.G - b.G) / scale < 1e-4);
  CHECK(std::abs(a.T - b.T) / scale < 1e-4);
}

TEST_CASE("impulsive run structure") {
  const VegetationParams p = testutil::r1(0.03);
  const DerivedQuantities d = derive_quantities(p);
  const Trajectory traj = run({2.0, 7.0, 0.0}, p, d, 3, p.tau / 50);
  REQUIRE(traj.impulses.size() == 3);
  SUBCASE("times strictly increase and fires land on multiples of tau") {
    for (size_t i = 1; i < traj.states.size(); ++i) {
      // post-fire rows share the fire time with the pre-fire rows
      CHECK(traj.states[i].t >= traj.states[i - 1].t);
    }
    for (size_t n = 0; n < traj.impulses.size(); ++n)
      CHECK(traj.impulses[n].t_n == doctest::Approx((n + 1) * p.tau).epsilon(1e-12));
  }
  SUBCASE("post-impulse states equal the fire map of the pre-impulse states exactly") {
    for (const auto& rec : traj.impulses) {
      auto [post, r2] = apply_impulse(rec.pre, p);
      CHECK(rec.post.G == post.G);
      CHECK(rec.post.T == post.T);
    }
  }
}

TEST_CASE("run limits and special regimes") {
  SUBCASE("tree-only initial grows into the forest, grass stays absent") {
    const VegetationParams p = testutil::r1(0.03);
    const DerivedQuantities d = derive_quantities(p);
    State s{0.0, d.Y_T / 2, 0.0};
    for (int n = 0; n < 80; ++n) {
      s = advance_period(s, p, d, p.tau / 200, Scheme::NSFD);
      s = apply_impulse(s, p).first;
      CHECK(s.G == 0.0);
    }
    CHECK(s.T == doctest::Approx(d.Y_T).epsilon(1e-8));
  }
  SUBCASE("identity impulses reproduce the smooth flow") {
    VegetationParams p = testutil::r1(0.03);
    p.lambda_fG = 0.0;
    p.lambda_fT = 0.0;
    const DerivedQuantities d = derive_quantities(p);
    const Trajectory pulsed = run({2.0, 7.0, 0.0}, p, d, 2, p.tau / 100);
    State smooth{2.0, 7.0, 0.0};
    for (int k = 0; k < 200; ++k) smooth = nsfd_step(smooth, p.tau / 100, p, d);
    CHECK(pulsed.states.back().G == doctest::Approx(smooth.G).epsilon(1e-12));
    CHECK(pulsed.states.back().T == doctest::Approx(smooth.T).epsilon(1e-12));
  }
}

TEST_CASE("attractor detection") {
  SUBCASE("bare soil converges in one period") {
    const VegetationParams p = testutil::r1(0.03);
    const DerivedQuantities d = derive_quantities(p);
    const AttractorVerdict v = detect_attractor({0, 0, 0}, p, d, attractor_candidates(p, d));
    CHECK(v.kind == AttractorVerdict::Kind::BareSoil);
    CHECK(v.periods_to_converge == 1);
  }
  SUBCASE("bistable humid scenario resolves both basins") {
    const VegetationParams p = testutil::fig6(OmegaArgConvention::StandingGrass);
    const DerivedQuantities d = derive_quantities(p);
    const AttractorCandidates cands = attractor_candidates(p, d);
    DetectOptions opt;
    opt.dt = p.tau / 400;
    const AttractorVerdict forest =
        detect_attractor({0.05 * d.X_G, 0.75 * d.Y_T, 0}, p, d, cands, opt);
    CHECK(forest.kind == AttractorVerdict::Kind::Forest);
    const AttractorVerdict grass =
        detect_attractor({0.75 * d.X_G, 0.02 * d.Y_T, 0}, p, d, cands, opt);
    CHECK(grass.kind == AttractorVerdict::Kind::GrasslandPeriodic);
    CHECK(grass.final_post_fire_state.G ==
          doctest::Approx(grassland_post_fire_value(p, d)).epsilon(1e-3));
  }
  SUBCASE("savanna-dominant semi-arid case attracts the interior") {
    const VegetationParams p = testutil::r1(0.03);
    const DerivedQuantities d = derive_quantities(p);
    const AttractorCandidates cands = attractor_candidates(p, d);
    DetectOptions opt;
    opt.dt = p.tau / 400;
    const AttractorVerdict v = detect_attractor({0.5 * d.X_G, 0.5 * d.Y_T, 0}, p, d, cands, opt);
    CHECK(v.kind == AttractorVerdict::Kind::SavannaPeriodic);
  }
}

TEST_CASE("basin maps") {
  SUBCASE("degenerate single-cell grid at the origin") {
    const VegetationParams p = testutil::r1(0.03);
    const DerivedQuantities d = derive_quantities(p);
    GridSpec g;
    g.nG = g.nT = 1;
    g.G_min = g.G_max = 0.0;
    g.T_min = g.T_max = 0.0;
    const BasinGrid basin = basin_map(p, d, g);
    REQUIRE(basin.cells.size() == 1);
    CHECK(basin.cells[0].kind == AttractorVerdict::Kind::BareSoil);
  }
  SUBCASE("forest-dominant case fills the grid with forest") {
    const VegetationParams p = testutil::r1(0.051);
    const DerivedQuantities d = derive_quantities(p);
    GridSpec g;
    g.nG = g.nT = 6;
    DetectOptions opt;
    opt.dt = p.tau / 300;
    const BasinGrid basin = basin_map(p, d, g, opt);
    for (const auto& c : basin.cells) CHECK(c.kind == AttractorVerdict::Kind::Forest);
  }
}

TEST_CASE("parameter sweep over the semi-arid competition panels") {
  const VegetationParams base = preset("R1");
  SweepOptions opt;
  opt.detect.dt = base.tau / 300;
  const auto points =
      parameter_sweep(base, SweepParameter::GammaTG, {-0.01, 0.01, 0.03, 0.051}, opt);
  REQUIRE(points.size() == 4);
  CHECK(points[0].regime.case_label == "DirectConditions");
  CHECK(points[1].regime.case_label == "XIII");
  CHECK(points[2].regime.case_label == "XIII");
  CHECK(points[3].regime.case_label == "V");
  for (int i = 0; i < 3; ++i) {
    REQUIRE(points[i].probe_attractors.size() >= 1);
    for (const auto k : points[i].probe_attractors)
      CHECK(k == AttractorVerdict::Kind::SavannaPeriodic);
  }
  for (const auto k : points[3].probe_attractors)
    CHECK(k == AttractorVerdict::Kind::Forest);
}

TEST_CASE("fire-period sweep swaps the grassland attractor for a savanna one") {
  const VegetationParams base = testutil::fig7(0.5);
  SweepOptions opt;
  opt.detect.dt = 0.5 / 400;
  const auto points = parameter_sweep(base, SweepParameter::Tau, {0.5, 0.6}, opt);
  REQUIRE(points.size() == 2);
  CHECK(points[0].regime.case_label == "VII");
  CHECK(points[1].regime.case_label == "VIII");
  auto has = [](const SweepPoint& pt, AttractorVerdict::Kind k) {
    for (const auto a : pt.probe_attractors)
      if (a == k) return true;
    return false;
  };
  CHECK(has(points[0], AttractorVerdict::Kind::GrasslandPeriodic));
  CHECK(has(points[0], AttractorVerdict::Kind::Forest));
  CHECK(!has(points[0], AttractorVerdict::Kind::SavannaPeriodic));
  CHECK(has(points[1], AttractorVerdict::Kind::SavannaPeriodic));
  CHECK(has(points[1], AttractorVerdict::Kind::Forest));
  CHECK(!has(points[1], AttractorVerdict::Kind::GrasslandPeriodic));
}

TEST_CASE("sweep edge handling") {
  const VegetationParams base = preset("R1");
  SUBCASE("empty value list") {
    CHECK(parameter_sweep(base, SweepParameter::Tau, {}).empty());
  }
  SUBCASE("invalid values are recorded inline and the sweep continues") {
    SweepOptions opt;
    opt.probes = false;
    const auto points = parameter_sweep(base, SweepParameter::LambdaFG, {0.5, 1.5}, opt);
    REQUIRE(points.size() == 2);
    CHECK(points[0].error.empty());
    CHECK(!points[1].error.empty());
  }
  SUBCASE("values are reported in ascending order") {
    SweepOptions opt;
    opt.probes = false;
    const auto points = parameter_sweep(base, SweepParameter::Tau, {9.0, 2.0, 5.0}, opt);
    REQUIRE(points.size() == 3);
    CHECK(points[0].value == 2.0);
    CHECK(points[2].value == 9.0);
  }
}

TEST_CASE("trajectories started in the invariant region stay there") {
  std::mt19937 rng(53);
  for (int set = 0; set < 5; ++set) {
    const VegetationParams p = testutil::table4_draw(rng, /*nonnegative_gamma_TG=*/true);
    const DerivedQuantities d = derive_quantities(p);
    const double slack = 1e-9 * std::max(d.X_G, d.Y_T);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      State s{uf(rng) * d.X_G, uf(rng) * d.Y_T, 0.0};
      for (int n = 0; n < 20; ++n) {
        const double t_end = s.t + p.tau;
        while (s.t < t_end - 1e-12 * p.tau) {
          s = nsfd_step(s, std::min(p.tau / 200, t_end - s.t), p, d);
          CHECK(s.G >= 0.0);
          CHECK(s.T >= 0.0);
          CHECK(s.G <= d.X_G + slack);
          CHECK(s.T <= d.Y_T + slack);
        }
        s = apply_impulse(s, p).first;
      }
    }
  }
}

TEST_CASE("states above the invariant region decay monotonically toward it") {
  const VegetationParams p = testutil::r1(0.03);
  const DerivedQuantities d = derive_quantities(p);
  State s{1.5 * d.X_G, 1.3 * d.Y_T, 0.0};
  double excess_G = s.G - d.X_G;
  double excess_T = s.T - d.Y_T;
  for (int n = 0; n < 6; ++n) {
    s = advance_period(s, p, d, p.tau / 200, Scheme::NSFD);
    const double eg = std::max(s.G - d.X_G, 0.0);
    const double et = std::max(s.T - d.Y_T, 0.0);
    CHECK((eg < excess_G || (eg == 0.0 && excess_G == 0.0)));
    CHECK((et < excess_T || (et == 0.0 && excess_T == 0.0)));
    excess_G = eg;
    excess_T = et;
    s = apply_impulse(s, p).first;
  }
  CHECK(excess_G < 1e-3 * d.X_G);
  CHECK(excess_T < 1e-3 * d.Y_T);
}
