#pragma once

// Variable reduction: a subset of variables (reduced) is computed from the
// remaining ones (core) through relations derived from individual equations,
// which are thereby eliminated. Search then runs over the core box only.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "problem.hpp"

namespace nes {

struct ReducedVar {
  int index = 0;          // 1-based variable index being reduced
  MultiExpr relation;     // right-hand side; may have two candidate branches
  int eliminated_eq = 0;  // 1-based equation satisfied by construction
};

class ReductionScheme {
 public:
  // Reduced variables in evaluation (file) order. Core variables and retained
  // equations are the ascending complements.
  ReductionScheme(int var_count, int eq_count, std::vector<ReducedVar> reduced);

  const std::vector<int>& core_vars() const { return core_vars_; }
  const std::vector<ReducedVar>& reduced_vars() const { return reduced_; }
  const std::vector<int>& retained_eqs() const { return retained_eqs_; }
  int core_count() const { return static_cast<int>(core_vars_.size()); }
  int retained_count() const { return static_cast<int>(retained_eqs_.size()); }

  // Bounds of the reduced decision space, in core order.
  std::vector<Bounds> core_bounds(const NesProblem& problem) const;

  // Projects a full vector onto the core components.
  std::vector<double> core_of(std::span<const double> full) const;

  bool operator==(const ReductionScheme& other) const;

 private:
  std::vector<int> core_vars_;
  std::vector<ReducedVar> reduced_;
  std::vector<int> retained_eqs_;
};

using CoreVector = std::vector<double>;

// Empty when the scheme is consistent with the problem; otherwise one message
// per violation.
std::vector<std::string> validate_scheme(const NesProblem& problem,
                                         const ReductionScheme& scheme);

struct ExpandedCandidate {
  DecisionVector full;       // all n components
  bool feasible = true;      // no reduced value required clamping
  std::vector<int> clamped;  // reduced indices that were clamped to a bound
};

// Expands a core-variable point into one full vector per surviving branch
// combination. Out-of-bound reduced values are clamped to the violated bound
// (single-valued relations) or dropped in favour of in-bound branches
// (multi-valued relations, falling back to nearest-bound clamps when no
// branch is feasible). NaN values clamp to the upper bound. Total over the
// core box; never returns an empty list.
std::vector<ExpandedCandidate> expand_individual(const NesProblem& problem,
                                                 const ReductionScheme& scheme,
                                                 std::span<const double> core);

enum class ObjectiveKind { L1, Sq };

struct ReducedObjective {
  double value = 0.0;
  ExpandedCandidate best;
  // Residuals of `best` over the retained equations, plus (for clamped
  // candidates only) the violated eliminated equations.
  std::vector<double> retained_residuals;
};

// Minimum of sum(|f_k|) or sum(f_k^2) over retained equations across all
// expanded candidates; candidates that required clamping additionally pay the
// residuals of the eliminated equations their clamping violated. Ties prefer
// feasible candidates, then the first in branch order. For feasible
// expansions of a fully eliminated system the value is 0.
ReducedObjective reduced_objective(const NesProblem& problem, const ReductionScheme& scheme,
                                   std::span<const double> core, ObjectiveKind kind);

// Best-candidate expansion of a whole population of core vectors.
std::vector<DecisionVector> expand_population(const NesProblem& problem,
                                              const ReductionScheme& scheme,
                                              std::span<const CoreVector> cores);

}  // namespace nes
