#pragma once

// The built-in benchmark problems, shipped as embedded problem files:
// F1-F7 with their reduction schemes, the nine-root stationary system of
// Himmelblau's function, and a three-equation trigonometric-polynomial demo
// system. Ground-truth roots are analytic where possible, otherwise produced
// by the grid+Newton oracle and committed as generated fixtures.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "problem.hpp"
#include "problem_io.hpp"
#include "reduction.hpp"

namespace nes {

struct SuiteEntry {
  std::string name;
  std::string file_text;  // problem-file source the entry was parsed from
  NesProblem problem;     // known roots attached when available
  std::optional<ReductionScheme> scheme;
  double epsilon = 0.02;  // match threshold for the solutions-found indicator
  long budget = 50000;
  std::vector<std::string> provenance;  // per ground-truth root
};

// Parses and validates the embedded suite; the embedded text is digest-checked
// against corruption. The instance is created once and shared.
const std::vector<SuiteEntry>& load_suite();

// Case-insensitive lookup; nullptr when absent.
const SuiteEntry* find_suite_entry(std::string_view name);

// Exactly NoR roots for finite-root entries; throws otherwise.
const std::vector<DecisionVector>& ground_truth(const SuiteEntry& entry);

}  // namespace nes
