#include <doctest.h>

#include <cmath>
#include <random>

#include "problem.hpp"
#include "problem_io.hpp"
#include "suite.hpp"

using namespace nes;

namespace {

const NesProblem& suite_problem(const char* name) {
  const SuiteEntry* e = find_suite_entry(name);
  REQUIRE(e != nullptr);
  return e->problem;
}

}  // namespace

TEST_CASE("residual evaluation on known points") {
  const NesProblem& f1 = suite_problem("F1");
  double s = std::sqrt(0.5);
  auto r = f1.residuals(std::vector<double>{s, s});
  CHECK(r[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r[1] == 0.0);

  const NesProblem& trig3 = suite_problem("trig3");
  auto t = trig3.residuals(std::vector<double>{0.0, 1.0, 4.0});
  CHECK(t[0] == -14.0);
  CHECK(t[1] == 0.0);
  CHECK(t[2] == doctest::Approx(std::cos(4.0)));
}

TEST_CASE("F7 equation 2 with the scheme-determined x19") {
  const NesProblem& f7 = suite_problem("F7");
  std::vector<double> x(20, 0.0);
  x[18] = -1.0;  // the value the reduction relation assigns at the origin
  auto r = f7.residuals(x);
  CHECK(r[19] == 0.0);          // sum(x_l) + 1 over l = 1..19
  for (int k = 0; k < 19; ++k)  // x20 = 0 nulls the first equation family
    CHECK(r[k] == 0.0);
}

TEST_CASE("residual norms") {
  const NesProblem& f1 = suite_problem("F1");
  CHECK(f1.residual_l1(std::vector<double>{0.0, 0.0}) == 1.0);
  CHECK(f1.residual_sq(std::vector<double>{0.0, 0.0}) == 1.0);

  double s = std::sqrt(0.5);
  CHECK(f1.residual_sq(std::vector<double>{s, s}) < 1e-12);
  CHECK(f1.residual_l1(std::vector<double>{s, s}) < 1e-12);

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x{u(gen), u(gen)};
    double sq = f1.residual_sq(x);
    CHECK(sq >= 0.0);
    CHECK((sq == 0.0) == (f1.residual_l1(x) == 0.0));
  }
}

TEST_CASE("dimension mismatch is rejected") {
  const NesProblem& f1 = suite_problem("F1");
  CHECK_THROWS_AS(f1.residual_sq(std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(f1.residuals(std::vector<double>{1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(f1.in_bounds(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("in_bounds is a closed-box test") {
  const NesProblem& f1 = suite_problem("F1");
  CHECK(f1.in_bounds(std::vector<double>{0.0, 0.0}));
  CHECK_FALSE(f1.in_bounds(std::vector<double>{1.1, 0.0}));
  CHECK(f1.in_bounds(std::vector<double>{1.0, -1.0}));  // boundary included
}

TEST_CASE("out-of-bound points stay evaluable") {
  const NesProblem& f1 = suite_problem("F1");
  CHECK(f1.residual_sq(std::vector<double>{2.0, 2.0}) > 0.0);
}

TEST_CASE("is_root couples the threshold with feasibility") {
  const NesProblem& f1 = suite_problem("F1");
  double s = std::sqrt(0.5);
  CHECK(f1.is_root(std::vector<double>{s, s}, 1e-5));
  CHECK_FALSE(f1.is_root(std::vector<double>{0.0, 0.0}, 1e-5));
  // shifting a root by 1e-2 pushes the squared residual above 1e-5
  CHECK(f1.residual_sq(std::vector<double>{s + 0.01, s}) == doctest::Approx(3.028384e-4).epsilon(1e-5));
  CHECK_FALSE(f1.is_root(std::vector<double>{s + 0.01, s}, 1e-5));
}

TEST_CASE("singular expressions propagate IEEE results") {
  auto pf = parse_problem_file(
      "[problem] name=sing vars=2\n"
      "bounds: x1 in [-1,1]; x2 in [-1,1]\n"
      "eq1: x1/x2\n");
  CHECK(std::isinf(pf.problem.residuals(std::vector<double>{1.0, 0.0})[0]));
  CHECK(std::isnan(pf.problem.residuals(std::vector<double>{0.0, 0.0})[0]));
}

TEST_CASE("construction rejects bad bounds and stray variables") {
  std::vector<ExprPtr> eqs{parse_expression("x1", 1)};
  CHECK_THROWS_AS(NesProblem("bad", {Bounds{1.0, -1.0}}, eqs), std::invalid_argument);
  std::vector<ExprPtr> eqs2{parse_expression("x2", 2)};
  CHECK_THROWS_AS(NesProblem("bad", {Bounds{-1.0, 1.0}}, eqs2), std::invalid_argument);
}

TEST_CASE("evaluation is deterministic") {
  const NesProblem& f6 = suite_problem("F6");
  std::vector<double> x{0.1, -0.2, 0.3, -0.4, 0.5, -0.6};
  auto a = f6.residuals(x);
  auto b = f6.residuals(x);
  CHECK(a == b);
}
