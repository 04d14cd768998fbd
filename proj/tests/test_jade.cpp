#include <doctest.h>

#include <cmath>

#include "jade.hpp"

using namespace nes;

namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

const std::vector<Bounds> kBox2{{-5.0, 5.0}, {-5.0, 5.0}};

}  // namespace

TEST_CASE("sphere converges well under the default settings") {
  JadeResult r = jade_run(sphere, kBox2, DeParams{}, 10000, 42);
  CHECK(r.best_objective < 1e-10);
  CHECK(r.evaluations <= 10000);
}

TEST_CASE("budget accounting: one generation per np evaluations") {
  DeParams p;
  p.np = 50;
  JadeResult r = jade_run(sphere, kBox2, p, 50, 1);
  CHECK(r.evaluations == 50);
  CHECK(r.trace.size() == 1);  // only the initial population evaluated

  JadeResult r2 = jade_run(sphere, kBox2, p, 120, 1);
  CHECK(r2.evaluations == 100);  // 50 init + one 50-trial generation
  CHECK(r2.trace.size() == 2);

  CHECK_THROWS_AS(jade_run(sphere, kBox2, p, 10, 1), std::invalid_argument);
}

TEST_CASE("same seed, same run") {
  JadeResult a = jade_run(sphere, kBox2, DeParams{}, 5000, 7);
  JadeResult b = jade_run(sphere, kBox2, DeParams{}, 5000, 7);
  CHECK(a.trace == b.trace);
  CHECK(a.population == b.population);
  CHECK(a.best == b.best);

  JadeResult c = jade_run(sphere, kBox2, DeParams{}, 5000, 8);
  CHECK(a.trace != c.trace);
}

TEST_CASE("trace of best objectives never worsens") {
  JadeResult r = jade_run(sphere, kBox2, DeParams{}, 8000, 3);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
}

TEST_CASE("per-slot selection is monotone within an epoch") {
  Rng rng(5);
  JadeEngine engine(sphere, kBox2, DeParams{}, &rng);
  engine.initialize();
  std::vector<double> before = engine.objectives();
  for (int g = 0; g < 20; ++g) {
    engine.step();
    const auto& after = engine.objectives();
    for (std::size_t i = 0; i < after.size(); ++i) CHECK(after[i] <= before[i]);
    before = after;
  }
}

TEST_CASE("NaN objectives lose against numbers") {
  auto nan_hole = [](std::span<const double> x) {
    if (x[0] > 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sphere(x);
  };
  JadeResult r = jade_run(nan_hole, kBox2, DeParams{}, 5000, 11);
  CHECK_FALSE(std::isnan(r.best_objective));
  CHECK(r.best[0] <= 0.0);
}

TEST_CASE("reflection repair stays inside the box") {
  CHECK(reflect_into_bounds(1.5, -1.0, 1.0) == doctest::Approx(0.5));
  CHECK(reflect_into_bounds(-1.25, -1.0, 1.0) == doctest::Approx(-0.75));
  CHECK(reflect_into_bounds(0.3, -1.0, 1.0) == 0.3);
  // a far point folds back into range instead of oscillating out
  double v = reflect_into_bounds(17.3, -1.0, 1.0);
  CHECK(v >= -1.0);
  CHECK(v <= 1.0);
  double w = reflect_into_bounds(-9.99, 0.0, 1.0);
  CHECK(w >= 0.0);
  CHECK(w <= 1.0);
}

TEST_CASE("invalid configurations are rejected") {
  Rng rng(1);
  DeParams tiny;
  tiny.np = 3;
  CHECK_THROWS_AS(JadeEngine(sphere, kBox2, tiny, &rng), std::invalid_argument);
  CHECK_THROWS_AS(JadeEngine(sphere, {}, DeParams{}, &rng), std::invalid_argument);
}
