#include "suite.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace nes {

namespace {

#include "suite_roots.inc"

constexpr const char* kFileF1 = R"(# Unit circle cut by the identity line.
[problem] name=F1 vars=2
bounds: x1 in [-1,1]; x2 in [-1,1]
eq1: x1^2 + x2^2 - 1
eq2: x1 - x2
[reduction]
reduce x2 = x1 eliminates eq2
[meta] nor=2 nfes_max=50000 epsilon=0.02
)";

constexpr const char* kFileF2 = R"(# Unit sphere in 20 dimensions pinched to two points by equation 2.
[problem] name=F2 vars=20
bounds: x1..x20 in [-1,1]
eq1: sum(i=1..20, x(i)^2) - 1
eq2: abs(x1 - x2) + sum(i=3..20, x(i)^2)
[reduction]
reduce x2 = ±sqrt(1 - (x1^2 + sum(i=3..20, x(i)^2))) eliminates eq1
[meta] nor=2 nfes_max=50000 epsilon=0.02
)";

constexpr const char* kFileF3 = R"(# Fixed points of a fast sine wave on the identity line.
[problem] name=F3 vars=2
bounds: x1 in [-1,1]; x2 in [-1,1]
eq1: x1 - sin(5*pi*x2)
eq2: x1 - x2
[reduction]
reduce x2 = x1 eliminates eq2
[meta] nor=11 nfes_max=50000 epsilon=0.02
)";

constexpr const char* kFileF4 = R"(# Cosine wave intersected with the unit circle.
[problem] name=F4 vars=2
bounds: x1 in [-1,1]; x2 in [-1,1]
eq1: x1 - cos(4*pi*x2)
eq2: x1^2 + x2^2 - 1
[reduction]
reduce x1 = cos(4*pi*x2) eliminates eq1
[meta] nor=15 nfes_max=50000 epsilon=0.02
)";

constexpr const char* kFileF5 = R"(# Fully reducible system: both equations are eliminated.
[problem] name=F5 vars=3
bounds: x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1]
eq1: x1 + x2 + x3 - 1
eq2: x1 - x2^3
[reduction]
reduce x1 = x2^3 eliminates eq2
reduce x3 = 1 - x1 - x2 eliminates eq1
[meta] nor=infinite nfes_max=50000 epsilon=0.01
)";

constexpr const char* kFileF6 = R"(# Neurophysiology model system with two ± relations and a singular quotient.
[problem] name=F6 vars=6
bounds: x1..x6 in [-1,1]
eq1: x1^2 + x3^2 - 1
eq2: x2^2 + x4^2 - 1
eq3: x5*x3^3 + x6*x4^3
eq4: x5*x1^3 + x6*x2^3
eq5: x5*x1*x3^2 + x6*x4^2*x2
eq6: x5*x3*x1^2 + x6*x2^2*x4
[reduction]
reduce x1 = ±sqrt(1 - x3^2) eliminates eq1
reduce x2 = ±sqrt(1 - x4^2) eliminates eq2
reduce x6 = -(x5*x3^3)/x4^3 eliminates eq3
[meta] nor=infinite nfes_max=50000 epsilon=0.02
)";

constexpr const char* kFileF7 = R"(# Economics model system, coefficient terms set to zero.
[problem] name=F7 vars=20
bounds: x1..x20 in [-1,1]
eq1: (x1 + sum(i=1..18, x(i)*x(i+1)))*x20
eq2: (x2 + sum(i=1..17, x(i)*x(i+2)))*x20
eq3: (x3 + sum(i=1..16, x(i)*x(i+3)))*x20
eq4: (x4 + sum(i=1..15, x(i)*x(i+4)))*x20
eq5: (x5 + sum(i=1..14, x(i)*x(i+5)))*x20
eq6: (x6 + sum(i=1..13, x(i)*x(i+6)))*x20
eq7: (x7 + sum(i=1..12, x(i)*x(i+7)))*x20
eq8: (x8 + sum(i=1..11, x(i)*x(i+8)))*x20
eq9: (x9 + sum(i=1..10, x(i)*x(i+9)))*x20
eq10: (x10 + sum(i=1..9, x(i)*x(i+10)))*x20
eq11: (x11 + sum(i=1..8, x(i)*x(i+11)))*x20
eq12: (x12 + sum(i=1..7, x(i)*x(i+12)))*x20
eq13: (x13 + sum(i=1..6, x(i)*x(i+13)))*x20
eq14: (x14 + sum(i=1..5, x(i)*x(i+14)))*x20
eq15: (x15 + sum(i=1..4, x(i)*x(i+15)))*x20
eq16: (x16 + sum(i=1..3, x(i)*x(i+16)))*x20
eq17: (x17 + sum(i=1..2, x(i)*x(i+17)))*x20
eq18: (x18 + sum(i=1..1, x(i)*x(i+18)))*x20
eq19: (x19 + sum(i=1..0, x(i)*x(i+19)))*x20
eq20: sum(l=1..19, x(l)) + 1
[reduction]
reduce x19 = -1 - sum(j=1..18, x(j)) eliminates eq20
[meta] nor=infinite nfes_max=50000 epsilon=0.02
)";

constexpr const char* kFileHimmelblau = R"(# Stationary points of Himmelblau's function; nine roots.
[problem] name=himmelblau vars=2
bounds: x1 in [-5,5]; x2 in [-5,5]
eq1: 4*x1^3 + 4*x1*x2 + 2*x2^2 - 42*x1 - 14
eq2: 4*x2^3 + 2*x1^2 + 4*x1*x2 - 26*x2 - 22
[meta] nor=9 nfes_max=50000 epsilon=0.02
)";

constexpr const char* kFileTrig3 = R"(# Three-equation demo system; one cubic relation reduces x3.
[problem] name=trig3 vars=3
bounds: x1 in [-5,5]; x2 in [-1,3]; x3 in [-5,5]
eq1: 3*x1^2 + sin(x1*x2) - x3^2 + 2.0
eq2: 2*x1^3 + x2^2 - x3 + 3.0
eq3: sin(2*x1) + cos(x2*x3) + x2 - 1.0
[reduction]
reduce x3 = 2*x1^3 + x2^2 + 3.0 eliminates eq2
[meta] nor=unknown nfes_max=50000 epsilon=0.02
)";

// FNV-1a over the concatenated embedded texts; guards against fixture
// corruption. Update via test_suite's printed value after editing a fixture.
constexpr std::uint64_t kSuiteDigest = 0x103b3df61e30a06bULL;

std::vector<DecisionVector> parse_root_lines(const char* text) {
  std::vector<DecisionVector> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    DecisionVector r;
    double v;
    while (ls >> v) r.push_back(v);
    if (!r.empty()) out.push_back(std::move(r));
  }
  return out;
}

SuiteEntry make_entry(const char* text, std::vector<DecisionVector> roots,
                      std::string provenance_tag) {
  ParsedProblemFile pf = parse_problem_file(text);
  SuiteEntry entry{pf.problem.name(), text, std::move(pf.problem), std::move(pf.scheme),
                   pf.epsilon, 0, {}};
  entry.budget = entry.problem.nfes_max();
  entry.provenance.assign(roots.size(), std::move(provenance_tag));
  entry.problem.set_known_roots(std::move(roots));
  return entry;
}

std::vector<SuiteEntry> build_suite() {
  const char* files[] = {kFileF1, kFileF2, kFileF3, kFileF4, kFileF5,
                         kFileF6, kFileF7, kFileHimmelblau, kFileTrig3};
  std::string all;
  for (const char* f : files) all += f;
  if (fnv1a64(all) != kSuiteDigest) {
    std::ostringstream os;
    os << "embedded suite fixtures are corrupted (digest 0x" << std::hex << fnv1a64(all)
       << ", expected 0x" << kSuiteDigest << ")";
    throw std::runtime_error(os.str());
  }

  const double s = std::sqrt(0.5);
  std::vector<DecisionVector> f1_roots{{s, s}, {-s, -s}};
  std::vector<DecisionVector> f2_roots{DecisionVector(20, 0.0), DecisionVector(20, 0.0)};
  f2_roots[0][0] = s;
  f2_roots[0][1] = s;
  f2_roots[1][0] = -s;
  f2_roots[1][1] = -s;

  std::vector<SuiteEntry> suite;
  suite.push_back(make_entry(kFileF1, std::move(f1_roots), "analytic"));
  suite.push_back(make_entry(kFileF2, std::move(f2_roots), "analytic"));
  suite.push_back(make_entry(kFileF3, parse_root_lines(kOracleRootsF3), "grid+newton"));
  suite.push_back(make_entry(kFileF4, parse_root_lines(kOracleRootsF4), "grid+newton"));
  suite.push_back(make_entry(kFileF5, {}, ""));
  suite.push_back(make_entry(kFileF6, {}, ""));
  suite.push_back(make_entry(kFileF7, {}, ""));
  suite.push_back(
      make_entry(kFileHimmelblau, parse_root_lines(kOracleRootsHimmelblau), "grid+newton"));
  suite.push_back(make_entry(kFileTrig3, {}, ""));
  return suite;
}

}  // namespace

const std::vector<SuiteEntry>& load_suite() {
  static const std::vector<SuiteEntry> suite = build_suite();
  return suite;
}

const SuiteEntry* find_suite_entry(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  std::string key = lower(name);
  for (const SuiteEntry& e : load_suite())
    if (lower(e.name) == key) return &e;
  return nullptr;
}

const std::vector<DecisionVector>& ground_truth(const SuiteEntry& entry) {
  if (!entry.problem.nor().is_finite())
    throw std::invalid_argument("problem " + entry.name + " does not have a finite root count");
  return entry.problem.known_roots();
}

}  // namespace nes
