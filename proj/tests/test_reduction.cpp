#include <doctest.h>

#include <cmath>
#include <random>

#include "problem_io.hpp"
#include "reduction.hpp"
#include "suite.hpp"

using namespace nes;

namespace {

const SuiteEntry& entry(const char* name) {
  const SuiteEntry* e = find_suite_entry(name);
  REQUIRE(e != nullptr);
  REQUIRE(e->scheme.has_value());
  return *e;
}

// Alternates full-box samples with center-shrunk ones; in high dimensions the
// feasible reduced region can be a vanishing fraction of the box (F2).
std::vector<double> random_core(const NesProblem& p, const ReductionScheme& s,
                                std::mt19937_64& gen, int draw) {
  std::vector<double> core;
  double scale = draw % 2 == 0 ? 1.0 : 0.2;
  for (Bounds b : s.core_bounds(p)) {
    double mid = 0.5 * (b.lower + b.upper);
    double half = 0.5 * (b.upper - b.lower) * scale;
    std::uniform_real_distribution<double> u(mid - half, mid + half);
    core.push_back(u(gen));
  }
  return core;
}

}  // namespace

TEST_CASE("validate_scheme accepts the suite schemes") {
  for (const char* name : {"F1", "F2", "F3", "F4", "F5", "F6", "F7", "trig3"}) {
    CAPTURE(name);
    const SuiteEntry& e = entry(name);
    CHECK(validate_scheme(e.problem, *e.scheme).empty());
  }
  CHECK(entry("F5").scheme->retained_count() == 0);  // fully eliminated
}

TEST_CASE("validate_scheme flags self-reference and double elimination") {
  const NesProblem& f5 = entry("F5").problem;

  ReductionScheme self_ref(3, 2,
                           {ReducedVar{3, parse_relation("1 - x3 - x2", 3), 1}});
  auto v1 = validate_scheme(f5, self_ref);
  REQUIRE_FALSE(v1.empty());
  CHECK(v1.front().find("references the variable it defines") != std::string::npos);

  ReductionScheme twice(3, 2,
                        {ReducedVar{1, parse_relation("x2^3", 3), 2},
                         ReducedVar{3, parse_relation("1 - x1 - x2", 3), 2}});
  auto v2 = validate_scheme(f5, twice);
  bool found = false;
  for (const auto& msg : v2)
    if (msg.find("eliminated more than once") != std::string::npos) found = true;
  CHECK(found);

  // forward reference: x3's relation uses x1 before x1 is reduced
  ReductionScheme forward(3, 2,
                          {ReducedVar{3, parse_relation("1 - x1 - x2", 3), 1},
                           ReducedVar{1, parse_relation("x2^3", 3), 2}});
  auto v3 = validate_scheme(f5, forward);
  bool fwd = false;
  for (const auto& msg : v3)
    if (msg.find("neither a core variable nor an earlier reduced one") != std::string::npos)
      fwd = true;
  CHECK(fwd);
}

TEST_CASE("expansion of the worked three-equation example") {
  const SuiteEntry& t3 = entry("trig3");

  auto feasible = expand_individual(t3.problem, *t3.scheme, std::vector<double>{0.0, 0.0});
  REQUIRE(feasible.size() == 1);
  CHECK(feasible[0].full == std::vector<double>{0.0, 0.0, 3.0});
  CHECK(feasible[0].feasible);
  CHECK(feasible[0].clamped.empty());

  // raw x3 = 2 + 1 + 3 = 6 exceeds the upper bound 5
  auto clamped = expand_individual(t3.problem, *t3.scheme, std::vector<double>{1.0, 1.0});
  REQUIRE(clamped.size() == 1);
  CHECK(clamped[0].full[2] == 5.0);
  CHECK_FALSE(clamped[0].feasible);
  CHECK(clamped[0].clamped == std::vector<int>{3});
}

TEST_CASE("multi-valued relations prefer feasible branches") {
  auto pf = parse_problem_file(
      "[problem] name=pmdemo vars=2\n"
      "bounds: x1 in [0,1]; x2 in [0,2]\n"
      "eq1: (x1 - 1)^2 - x2^2\n"
      "eq2: x1 + x2 - 1\n"
      "[reduction]\n"
      "reduce x1 = 1 ± x2 eliminates eq1\n");
  REQUIRE(pf.scheme.has_value());

  // x2 = 1: raw candidates {2, 0}; only 0 is feasible
  auto one = expand_individual(pf.problem, *pf.scheme, std::vector<double>{1.0});
  REQUIRE(one.size() == 1);
  CHECK(one[0].full[0] == 0.0);
  CHECK(one[0].feasible);

  // x2 = 0.25: both 1.25 and 0.75 raw, only 0.75 in bounds
  auto quarter = expand_individual(pf.problem, *pf.scheme, std::vector<double>{0.25});
  REQUIRE(quarter.size() == 1);
  CHECK(quarter[0].full[0] == 0.75);

  // x2 = 2: raw {3, -1}; nothing feasible, both clamp to the nearest bound
  auto none = expand_individual(pf.problem, *pf.scheme, std::vector<double>{2.0});
  REQUIRE(none.size() == 2);
  CHECK(none[0].full[0] == 1.0);
  CHECK(none[1].full[0] == 0.0);
  CHECK_FALSE(none[0].feasible);
  CHECK_FALSE(none[1].feasible);
}

TEST_CASE("F6 expansion branches form a cartesian set") {
  const SuiteEntry& f6 = entry("F6");
  // core order is (x3, x4, x5)
  auto cands = expand_individual(f6.problem, *f6.scheme, std::vector<double>{0.0, 1.0, 1.0});
  REQUIRE(cands.size() == 2);  // x1 = ±1; x2 = ±0 collapses; x6 single-valued
  CHECK(cands[0].full[0] == 1.0);
  CHECK(cands[1].full[0] == -1.0);
  CHECK(cands[0].full[1] == 0.0);
  CHECK(cands[0].full[5] == 0.0);
  CHECK(cands[0].feasible);
  CHECK(cands[1].feasible);
}

TEST_CASE("singular relations clamp instead of failing") {
  const SuiteEntry& f6 = entry("F6");
  // x4 = 0 makes x6 = -x5 x3^3 / x4^3 singular
  auto cands = expand_individual(f6.problem, *f6.scheme, std::vector<double>{0.5, 0.0, 0.5});
  REQUIRE_FALSE(cands.empty());
  for (const auto& c : cands) {
    CHECK_FALSE(c.feasible);
    CHECK((c.full[5] == 1.0 || c.full[5] == -1.0));  // clamped to a bound
    bool has6 = false;
    for (int idx : c.clamped) has6 |= idx == 6;
    CHECK(has6);
  }
}

TEST_CASE("reduced objective on roots and eliminated systems") {
  const SuiteEntry& f1 = entry("F1");
  double s = std::sqrt(0.5);
  auto ro = reduced_objective(f1.problem, *f1.scheme, std::vector<double>{s}, ObjectiveKind::Sq);
  CHECK(ro.value < 1e-12);
  CHECK(ro.best.full[0] == s);
  CHECK(ro.best.full[1] == s);

  const SuiteEntry& f5 = entry("F5");
  auto f5v = reduced_objective(f5.problem, *f5.scheme, std::vector<double>{0.3}, ObjectiveKind::Sq);
  CHECK(f5v.value == 0.0);  // no retained equations
  CHECK(f5v.retained_residuals.empty());

  const SuiteEntry& f4 = entry("F4");
  auto f4v = reduced_objective(f4.problem, *f4.scheme, std::vector<double>{0.0}, ObjectiveKind::Sq);
  CHECK(f4v.best.full[0] == 1.0);  // x1 = cos(0)
  CHECK(f4v.value == doctest::Approx(0.0));
}

TEST_CASE("round-trip through ground-truth roots") {
  for (const char* name : {"F1", "F2", "F3", "F4"}) {
    CAPTURE(name);
    const SuiteEntry& e = entry(name);
    for (const auto& root : e.problem.known_roots()) {
      auto core = e.scheme->core_of(root);
      auto cands = expand_individual(e.problem, *e.scheme, core);
      double best = 1e9;
      for (const auto& c : cands) {
        double inf_norm = 0.0;
        for (std::size_t j = 0; j < root.size(); ++j)
          inf_norm = std::max(inf_norm, std::fabs(c.full[j] - root[j]));
        best = std::min(best, inf_norm);
      }
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("eliminated equations vanish on feasible expansions") {
  std::mt19937_64 gen(11);
  for (const char* name : {"F1", "F2", "F3", "F4", "F5", "F6", "F7", "trig3"}) {
    CAPTURE(name);
    const SuiteEntry& e = entry(name);
    int checked = 0;
    for (int t = 0; t < 2000; ++t) {
      auto core = random_core(e.problem, *e.scheme, gen, t);
      for (const auto& cand : expand_individual(e.problem, *e.scheme, core)) {
        if (!cand.feasible) continue;
        ++checked;
        for (const auto& rv : e.scheme->reduced_vars()) {
          double r = e.problem.equations()[rv.eliminated_eq - 1]->eval(cand.full);
          CHECK(std::fabs(r) < 1e-9);
        }
      }
    }
    CAPTURE(checked);
    CHECK(checked > 0);
  }
}

TEST_CASE("candidate counts and clamped values sit on bounds") {
  std::mt19937_64 gen(13);
  const SuiteEntry& f6 = entry("F6");
  for (int t = 0; t < 2000; ++t) {
    auto core = random_core(f6.problem, *f6.scheme, gen, t);
    auto cands = expand_individual(f6.problem, *f6.scheme, core);
    CHECK_FALSE(cands.empty());
    CHECK(cands.size() <= 4);  // at most 2 x 2 branches, x6 single-valued
    for (const auto& c : cands) {
      for (int idx : c.clamped) {
        const Bounds& b = f6.problem.bounds()[idx - 1];
        CHECK((c.full[idx - 1] == b.lower || c.full[idx - 1] == b.upper));
      }
      // core components are untouched
      auto back = f6.scheme->core_of(c.full);
      CHECK(back == core);
    }
  }
}

TEST_CASE("reduced objective is nonnegative and zero only at retained roots") {
  std::mt19937_64 gen(17);
  const SuiteEntry& f4 = entry("F4");
  for (int t = 0; t < 500; ++t) {
    auto core = random_core(f4.problem, *f4.scheme, gen, t);
    auto ro = reduced_objective(f4.problem, *f4.scheme, core, ObjectiveKind::Sq);
    CHECK(ro.value >= 0.0);
  }
}

TEST_CASE("expand_population maps cores to best candidates") {
  const SuiteEntry& f1 = entry("F1");
  CHECK(expand_population(f1.problem, *f1.scheme, std::vector<CoreVector>{}).empty());

  double s = std::sqrt(0.5);
  auto full = expand_population(f1.problem, *f1.scheme, std::vector<CoreVector>{{s}});
  REQUIRE(full.size() == 1);
  CHECK(full[0] == std::vector<double>{s, s});

  std::mt19937_64 gen(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<CoreVector> cores(100);
  for (auto& c : cores) c = {u(gen)};
  auto pop = expand_population(f1.problem, *f1.scheme, cores);
  REQUIRE(pop.size() == 100);
  for (std::size_t i = 0; i < pop.size(); ++i) CHECK(pop[i][0] == cores[i][0]);
}
