#include <doctest.h>

#include <cmath>
#include <random>

#include "suite.hpp"
#include "transforms.hpp"

using namespace nes;

namespace {

// High-precision erf oracle: long-double Taylor series for small arguments,
// Lentz continued fraction for erfc above 2. Independent of std::erf.
long double erf_oracle(long double x) {
  if (x < 0) return -erf_oracle(-x);
  const long double two_over_sqrt_pi = 1.128379167095512573896158903121545172L;
  if (x <= 2.0L) {
    long double term = x, sum = x;
    for (int n = 1; n < 120; ++n) {
      term *= -x * x / n;
      sum += term / (2 * n + 1);
      if (std::fabs((double)(term / (2 * n + 1))) < 1e-25) break;
    }
    return two_over_sqrt_pi * sum;
  }
  // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + 1/(2x + 2/(x + 3/(2x + ...))))
  long double cf = 0.0L;
  for (int k = 60; k >= 1; --k) {
    long double ak = 0.5L * k;
    cf = ak / (x + cf);
  }
  long double erfc = std::exp(-x * x) / std::sqrt((long double)M_PI) / (x + cf);
  return 1.0L - erfc;
}

const NesProblem& suite_problem(const char* name) {
  const SuiteEntry* e = find_suite_entry(name);
  REQUIRE(e != nullptr);
  return e->problem;
}

}  // namespace

TEST_CASE("erf oracle agrees with the library implementation") {
  for (double x = 0.0; x <= 6.0; x += 0.03125)
    CHECK(std::fabs(std::erf(x) - (double)erf_oracle(x)) < 1e-12);
}

TEST_CASE("gamma schedule endpoints and midpoint") {
  RepulsionConfig cfg;
  cfg.t_max = 500;
  cfg.gamma_min = 0.02;
  cfg.gamma_max = 1.0;
  CHECK(gamma_at(cfg, 0) == 1.0);
  CHECK(gamma_at(cfg, 500) == 0.02);
  CHECK(gamma_at(cfg, 250) == doctest::Approx(0.02 + 0.25 * 0.98));
  for (long t = 1; t <= 500; ++t) CHECK(gamma_at(cfg, t) <= gamma_at(cfg, t - 1));
  CHECK_THROWS_AS(gamma_at(cfg, -1), std::out_of_range);
  CHECK_THROWS_AS(gamma_at(cfg, 501), std::out_of_range);
}

TEST_CASE("default gammas use positive ranges") {
  auto [gmin1, gmax1] = default_gammas(suite_problem("F1"));
  CHECK(gmin1 == doctest::Approx(0.02));
  CHECK(gmax1 == doctest::Approx(1.0));

  auto [gmin2, gmax2] = default_gammas(suite_problem("trig3"));
  CHECK(gmin2 == doctest::Approx(0.04));  // smallest range is 4
  CHECK(gmax2 == doctest::Approx(2.0));
}

TEST_CASE("zeta: outside radius, at zero distance, and against the oracle") {
  RepulsionConfig cfg;  // rho = 0.1, cap 1e12
  CHECK(zeta(cfg, 3.0, 2.0) == 1.0);
  CHECK(zeta(cfg, 0.0, 2.0) == 1e12);

  double expected = 1.0 / (double)erf_oracle(0.1L);
  CHECK(std::fabs(zeta(cfg, 1.0, 2.0) - expected) < 1e-6);
  CHECK(zeta(cfg, 1.0, 2.0) == doctest::Approx(8.8918199474519586).epsilon(1e-12));

  // always >= 1, so repulsion never rewards proximity
  for (double d = 0.0; d < 2.0; d += 0.01) CHECK(zeta(cfg, d, 2.0) >= 1.0);
}

TEST_CASE("repulsion value") {
  RepulsionConfig cfg;
  cfg.t_max = 100;
  cfg.gamma_min = 2.0;
  cfg.gamma_max = 2.0;
  RootArchive archive;

  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x{u(gen), u(gen)};
    double g = u(gen) + 5.0;
    CHECK(repulsion_value(cfg, g, x, archive, 0) == g);  // empty product
  }

  REQUIRE(archive.try_add(std::vector<double>{0.0, 0.0}, 0.0));
  std::vector<double> far{4.0, 4.0};  // distance > gamma
  CHECK(repulsion_value(cfg, 0.5, far, archive, 0) == 0.5);

  std::vector<double> near{1.0, 0.0};  // distance exactly 1
  double expected = 0.5 / (double)erf_oracle(0.1L);
  CHECK(repulsion_value(cfg, 0.5, near, archive, 0) == doctest::Approx(expected).epsilon(1e-12));

  // R >= g always
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x{u(gen), u(gen)};
    double g = std::fabs(u(gen));
    CHECK(repulsion_value(cfg, g, x, archive, 50) >= g);
  }
}

TEST_CASE("root archive deduplication") {
  RootArchive archive;  // dedup radius 0.01
  CHECK(archive.try_add(std::vector<double>{0.0, 0.0}, 1e-9));
  CHECK_FALSE(archive.try_add(std::vector<double>{0.0, 0.0}, 1e-9));       // identical
  CHECK_FALSE(archive.try_add(std::vector<double>{0.005, 0.0}, 1e-9));    // too close
  CHECK(archive.try_add(std::vector<double>{0.02, 0.0}, 1e-9));           // far enough
  CHECK_FALSE(archive.try_add(std::vector<double>{5.0, 5.0}, 2e-5));      // residual too large
  CHECK(archive.size() == 2);
  for (const auto& e : archive.entries()) CHECK(e.residual_sq < 1e-5);
}

TEST_CASE("bi-objective transform") {
  auto [g1, g2] = mones_objectives(0.3, std::vector<double>{});
  CHECK(g1 == doctest::Approx(0.3));
  CHECK(g2 == doctest::Approx(0.7));

  auto [h1, h2] = mones_objectives(0.0, std::vector<double>{1.0, -1.0});
  CHECK(h1 == 2.0);  // 0 + |1| + |-1|
  CHECK(h2 == 3.0);  // 1 + 2 * max(1, 1)

  auto [p1, p2] = mones_objectives(0.5, std::vector<double>{});
  CHECK(p1 == 0.5);
  CHECK(p2 == 0.5);

  // any exact root lies on the line y = 1 - x
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    double xr = u(gen);
    auto [a, b] = mones_objectives(xr, std::vector<double>{0.0, 0.0, 0.0});
    CHECK(a + b == doctest::Approx(1.0).epsilon(1e-15));
  }
}
