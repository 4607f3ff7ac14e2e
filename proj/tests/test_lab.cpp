#include <cmath>

#include "core/error.hpp"
#include "core/lab.hpp"
#include "doctest.h"

using namespace gupbell;

namespace {

ScenarioEvaluator qm_evaluator() { return ScenarioEvaluator(ScenarioConfig{}); }

}  // namespace

TEST_CASE("axis values include both endpoints") {
  const auto v = AxisSpec{0.0, 2.0 * kPi, 201}.values();
  REQUIRE(v.size() == 201);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 2.0 * kPi);
  CHECK(v[50] == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS((AxisSpec{0.0, 1.0, 1}.values()), Error);
  CHECK_THROWS_AS((AxisSpec{1.0, 1.0, 5}.values()), Error);
}

TEST_CASE("two-angle family matches its closed form for PhiPlus") {
  const PureState phi = bell_state(BellKind::PhiPlus);
  for (double t1 = -3.0; t1 < 7.0; t1 += 0.37) {
    for (double t2 = -3.0; t2 < 7.0; t2 += 0.41) {
      const double closed = 2.0 * std::cos(t2) + 2.0 * std::sin(t1) * std::sin(t2);
      CHECK(std::abs(chsh_value(phi, two_angle_settings(t1, t2)) - closed) < 1e-12);
    }
  }
}

TEST_CASE("default scan: Tsirelson maximum and two regions above 2") {
  const ScanGrid g = grid_scan(qm_evaluator(), AxisSpec{}, AxisSpec{}, 1);
  CHECK(g.values.size() == 201u * 201u);
  CHECK(std::abs(g.max_value() - kTsirelsonBound) < 1e-12);
  CHECK(g.min_value() >= -kTsirelsonBound - 1e-12);
  CHECK(count_regions_above(g) == 2);
}

TEST_CASE("half-range scan has a single region above 2") {
  const AxisSpec half{0.0, kPi, 201};
  const ScanGrid g = grid_scan(qm_evaluator(), half, half, 1);
  CHECK(count_regions_above(g) == 1);
}

TEST_CASE("scan output is independent of the thread count") {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::S1;
  cfg.model = GupModel(0.2, Tilt{});
  const ScenarioEvaluator ev(cfg);
  const AxisSpec axis{0.0, 2.0 * kPi, 41};
  const ScanGrid a = grid_scan(ev, axis, axis, 1);
  const ScanGrid b = grid_scan(ev, axis, axis, 3);
  CHECK(a.values == b.values);
  CHECK(a.scenario == Scenario::S1);
  CHECK(a.beta == 0.2);
}

TEST_CASE("region counting on hand-made grids") {
  ScanGrid g;
  g.theta1_axis = {0, 1, 2};
  g.theta2_axis = {0, 1, 2};
  g.values = {3, 0, 3,
              0, 0, 0,
              3, 0, 3};
  CHECK(count_regions_above(g) == 4);
  g.values = {3, 3, 3,
              0, 0, 3,
              3, 3, 3};
  CHECK(count_regions_above(g) == 1);
  // Diagonal neighbours are not 4-connected.
  g.values = {3, 0, 0,
              0, 3, 0,
              0, 0, 3};
  CHECK(count_regions_above(g) == 3);
  g.values.assign(9, 2.0);
  CHECK(count_regions_above(g) == 0);
}

TEST_CASE("beta sweep stays below the Boxworld ceiling") {
  ScenarioConfig base;
  base.model = GupModel(0.0, Tilt{});
  const auto curves = beta_sweep(base, {0.1, 0.2, 0.5, 0.9}, AxisSpec{0.0, kPi, 721},
                                 {Scenario::Qm, Scenario::S1, Scenario::S2, Scenario::S3}, 1);
  REQUIRE(curves.size() == 4);
  for (const auto& c : curves) {
    CHECK(c.theta_axis.size() == 721);
    for (const auto& [sc, values] : c.series) {
      for (double v : values) CHECK(v <= kBoxworldBound);
    }
  }
  CHECK(curves[2].beta == 0.5);
  const auto& s1 = curves[2].series_for(Scenario::S1);
  // theta = pi/8 is node 90 of the 721-point axis on [0, pi].
  CHECK(std::abs(s1[90] - 1.6594823280071291) < 1e-12);
}

TEST_CASE("optimizer recovers Tsirelson for PhiPlus") {
  OptimizeOptions opt;
  const Optimum best = optimize_angles(qm_evaluator(), opt, 1);
  CHECK(std::abs(best.value - kTsirelsonBound) < 1e-6);
  CHECK(std::abs(chsh_value(bell_state(BellKind::PhiPlus), best.settings) - best.value) < 1e-12);
  CHECK_FALSE(best.budget_exhausted);

  opt.full_sphere = true;
  const Optimum full = optimize_angles(qm_evaluator(), opt, 1);
  CHECK(std::abs(full.value - kTsirelsonBound) < 1e-6);

  opt.restarts = 0;
  CHECK_THROWS_AS(optimize_angles(qm_evaluator(), opt, 1), Error);
}

TEST_CASE("optimizer is deterministic across thread counts") {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::S1;
  cfg.model = GupModel(0.3, Tilt{{1.0, 0.0, 0.0}});
  const ScenarioEvaluator ev(cfg);
  OptimizeOptions opt;
  opt.coarse_points = 9;
  const Optimum a = optimize_angles(ev, opt, 1);
  const Optimum b = optimize_angles(ev, opt, 4);
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.value >= a.coarse_value);
}

TEST_CASE("region classification boundaries") {
  CHECK(classify(-4.0) == Region::Classical);
  CHECK(classify(2.0) == Region::Classical);
  CHECK(classify(std::nextafter(2.0, 3.0)) == Region::Quantum);
  CHECK(classify(kTsirelsonBound) == Region::Quantum);
  CHECK(classify(std::nextafter(kTsirelsonBound, 3.0)) == Region::Superquantum);
  CHECK(classify(4.0) == Region::Superquantum);
  CHECK(classify(4.0 + 1e-12) == Region::Unphysical);
  CHECK_THROWS_AS(classify(std::nan("")), Error);
  CHECK(std::string(region_name(Region::Superquantum)) == "superquantum");
}
