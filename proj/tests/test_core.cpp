#include <doctest.h>

#include <cmath>
#include <limits>

#include "support/oracles.hpp"
#include "swarmopt/baselines.hpp"
#include "swarmopt/igwo.hpp"

using namespace swarmopt;

namespace {

double sphere(std::span<const double> x, RandomSource&) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

TEST_CASE("rng stream is reproducible and in range") {
  RngStream a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    differs = differs || u != c.uniform();
  }
  CHECK(differs);
  for (int i = 0; i < 1000; ++i) CHECK(a.index(5) < 5);
  CHECK_THROWS_AS(a.index(0), ContractError);
  CHECK(mix_seed(1, 1) != mix_seed(1, 2));
}

TEST_CASE("clamp projects onto the box") {
  auto spec = ObjectiveSpec::box("s", 2, -100, 100, sphere);
  CHECK(clamp(std::vector{-150.0, 3.0}, spec) == std::vector{-100.0, 3.0});
  CHECK(clamp(std::vector{12.5, -7.0}, spec) == std::vector{12.5, -7.0});
  CHECK(clamp(std::vector{200.0, -200.0}, spec) == std::vector{100.0, -100.0});
  CHECK_THROWS_AS(clamp(std::vector{1.0}, spec), ContractError);
  CHECK(within_bounds(std::vector{100.0, -100.0}, spec));
  CHECK_FALSE(within_bounds(std::vector{100.5, 0.0}, spec));
}

TEST_CASE("initialize_population") {
  SUBCASE("uniform in the box with evaluated fitness") {
    auto spec = ObjectiveSpec::box("s", 2, 0, 1, sphere);
    Evaluator ev(spec, 1);
    RngStream rng(3);
    const auto pop = initialize_population(spec, 3, rng, ev);
    REQUIRE(pop.size() == 3);
    RngStream unused(0);
    for (const auto& a : pop) {
      REQUIRE(a.position.size() == 2);
      for (double v : a.position) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(a.fitness == sphere(a.position, unused));
    }
    CHECK(ev.count() == 3);
  }
  SUBCASE("degenerate interval rejected") {
    auto spec = ObjectiveSpec::box("s", 3, 5, 5, sphere);
    Evaluator ev(spec, 1);
    RngStream rng(3);
    CHECK_THROWS_AS(initialize_population(spec, 4, rng, ev), ConfigError);
  }
  SUBCASE("same seed, same positions") {
    auto spec = ObjectiveSpec::box("s", 30, -100, 100, sphere);
    Evaluator e1(spec, 1), e2(spec, 1);
    RngStream r1(42), r2(42);
    const auto p1 = initialize_population(spec, 40, r1, e1);
    const auto p2 = initialize_population(spec, 40, r2, e2);
    for (std::size_t i = 0; i < 40; ++i) CHECK(p1[i].position == p2[i].position);
  }
}

TEST_CASE("evaluator tracks every evaluation and rejects NaN") {
  auto spec = ObjectiveSpec::box("s", 2, -10, 10, sphere);
  Evaluator ev(spec, 0);
  CHECK(ev.best_fitness() == std::numeric_limits<double>::infinity());
  ev(std::vector{3.0, 4.0});
  ev(std::vector{1.0, 0.0});
  ev(std::vector{5.0, 5.0});
  CHECK(ev.count() == 3);
  CHECK(ev.best_fitness() == 1.0);
  CHECK(ev.best_position() == std::vector{1.0, 0.0});

  auto bad = ObjectiveSpec::box("nan", 2, -1, 1, [](std::span<const double> x, RandomSource&) {
    return x[0] > 0.5 ? std::nan("") : 0.0;
  });
  Evaluator evb(bad, 0);
  try {
    evb(std::vector{0.75, -0.25});
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.position() == std::vector{0.75, -0.25});
  }
}

TEST_CASE("run: constant objective, empty budget, monotone curves") {
  auto constant = ObjectiveSpec::box("c", 3, -1, 1,
                                     [](std::span<const double>, RandomSource&) { return 7.0; });
  igwo::IgwoOptimizer igwo;
  const auto res = run(igwo, constant, {10, 15, 5});
  CHECK(res.best_fitness == 7.0);
  REQUIRE(res.curve.size() == 15);
  for (double v : res.curve) CHECK(v == 7.0);

  CHECK_THROWS_AS(run(igwo, constant, {10, 0, 5}), ConfigError);
  CHECK_THROWS_AS(run(igwo, constant, {3, 10, 5}), ConfigError);

  auto sph = ObjectiveSpec::box("sphere", 2, -100, 100, sphere);
  igwo::IgwoOptimizer a;
  baselines::GwoOptimizer b;
  baselines::PsoOptimizer c;
  baselines::WoaOptimizer d;
  for (Optimizer* opt : std::initializer_list<Optimizer*>{&a, &b, &c, &d}) {
    const auto r = run(*opt, sph, {20, 50, 11});
    for (std::size_t t = 1; t < r.curve.size(); ++t) CHECK(r.curve[t] <= r.curve[t - 1]);
    CHECK(r.best_fitness == r.curve.back());
    RngStream unused(0);
    CHECK(sphere(r.best_position, unused) == r.best_fitness);
  }
}

TEST_CASE("run aborts on NaN fitness") {
  auto bad = ObjectiveSpec::box("nan", 2, -1, 1, [](std::span<const double>, RandomSource&) {
    return std::nan("");
  });
  baselines::GwoOptimizer gwo;
  CHECK_THROWS_AS(run(gwo, bad, {5, 5, 1}), EvaluationError);
}

TEST_CASE("run is deterministic per seed") {
  auto sph = ObjectiveSpec::box("sphere", 5, -10, 10, sphere);
  igwo::IgwoOptimizer o1, o2;
  const auto r1 = run(o1, sph, {12, 20, 99});
  const auto r2 = run(o2, sph, {12, 20, 99});
  CHECK(r1.curve == r2.curve);
  CHECK(r1.best_position == r2.best_position);
  CHECK(r1.evaluations == r2.evaluations);
}
