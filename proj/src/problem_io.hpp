#pragma once

// Text format for problem definitions. See README for the grammar; a short
// example:
//
//   [problem] name=F1 vars=2
//   bounds: x1 in [-1,1]; x2 in [-1,1]
//   eq1: x1^2 + x2^2 - 1
//   eq2: x1 - x2
//   [reduction]
//   reduce x2 = x1 eliminates eq2
//   [meta] nor=2 nfes_max=50000 epsilon=0.02
//
// Equations are residual expressions, implicitly "= 0". Reduction lines are
// ordered; later relations may reference earlier reduced variables.

#include <optional>
#include <string>
#include <string_view>

#include "problem.hpp"
#include "reduction.hpp"

namespace nes {

struct ParsedProblemFile {
  NesProblem problem;
  std::optional<ReductionScheme> scheme;
  double epsilon = 0.02;  // match threshold for the solutions-found indicator
};

// Throws ParseError (message prefixed with the line number) on malformed
// input; scheme violations are reported the same way.
ParsedProblemFile parse_problem_file(std::string_view text);

std::string print_problem_file(const ParsedProblemFile& pf);

}  // namespace nes
