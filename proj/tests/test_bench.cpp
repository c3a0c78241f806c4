#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "swarmopt/bench.hpp"

using namespace swarmopt;
using namespace swarmopt::bench;

TEST_CASE("suite layout") {
  const auto all = suite();
  REQUIRE(all.size() == 13);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(static_cast<std::size_t>(all[i].id) == i + 1);
    CHECK(all[i].dimension == 30);
    CHECK(all[i].lower == -all[i].upper);
    CHECK_NOTHROW(all[i].objective.validate());
  }
  CHECK(make(FunctionId::F7).upper == 1.28);
  CHECK(make(FunctionId::F8).upper == 500.0);
  CHECK(make(FunctionId::F11).upper == 600.0);
  CHECK(parse_id("f10") == FunctionId::F10);
  CHECK_FALSE(parse_id("F14").has_value());
  CHECK(label(FunctionId::F3) == "F3");
  CHECK_THROWS_AS(make(FunctionId::F1, 1), ConfigError);
}

TEST_CASE("values at the optimizers") {
  RngStream noise(1);
  for (const auto& b : suite(30)) {
    if (b.id == FunctionId::F7 || b.id == FunctionId::F8 || b.id == FunctionId::F10) continue;
    const std::vector<double> x(30, b.optimizer_coordinate);
    CHECK_MESSAGE(std::abs(evaluate(b.id, x, noise)) < 1e-12, b.label);
  }
  const std::vector<double> zero(30, 0.0);
  CHECK(evaluate(FunctionId::F1, zero, noise) == 0.0);
  CHECK(evaluate(FunctionId::F9, zero, noise) == 0.0);
  CHECK(evaluate(FunctionId::F11, zero, noise) == 0.0);
  CHECK(evaluate(FunctionId::F5, std::vector<double>(30, 1.0), noise) == 0.0);
  // Floating-point residue of 20 + e - 20 - e.
  CHECK(oracle::rel_close(evaluate(FunctionId::F10, zero, noise), 4.440892098500626e-16, 1e-9));
}

TEST_CASE("F8 near its optimizer") {
  RngStream noise(1);
  const std::vector<double> x(30, 420.9687);
  // 30 * -420.9687 * sin(sqrt(420.9687)) evaluated independently.
  CHECK(oracle::rel_close(evaluate(FunctionId::F8, x, noise), -12569.48661816488));
  CHECK(std::abs(make(FunctionId::F8).known_optimum - (-12569.487)) < 1e-9);
}

TEST_CASE("F7 noise averages to one half") {
  RngStream noise(99);
  const std::vector<double> zero(30, 0.0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double v = evaluate(FunctionId::F7, zero, noise);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    sum += v;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("hand-checked points") {
  RngStream noise(1);
  const std::vector<double> x{1.0, -2.0};
  CHECK(evaluate(FunctionId::F1, x, noise) == 5.0);
  CHECK(evaluate(FunctionId::F2, x, noise) == 5.0);   // 3 + 2
  CHECK(evaluate(FunctionId::F3, x, noise) == 2.0);   // 1 + 1
  CHECK(evaluate(FunctionId::F4, x, noise) == 2.0);
  CHECK(evaluate(FunctionId::F5, x, noise) == 900.0); // 100 * 9 + 0
  CHECK(evaluate(FunctionId::F6, std::vector{0.4, -1.6}, noise) == 4.0);
  CHECK(oracle::rel_close(evaluate(FunctionId::F9, x, noise), 5.0));
}

TEST_CASE("dimension checks") {
  RngStream noise(1);
  CHECK_THROWS_AS(evaluate(FunctionId::F1, std::vector{1.0}, noise), ContractError);
  const auto spec = make(FunctionId::F1, 5).objective;
  CHECK_THROWS_AS(spec.evaluate(std::vector{1.0, 2.0}, noise), ContractError);
}
