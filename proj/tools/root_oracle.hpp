#pragma once

// Ground-truth root search for small systems: Newton iteration (damped, with
// finite-difference Jacobians) started from a dense grid, followed by
// deduplication. Lives in the tool layer, not the library; it only needs a
// residual callback and the box bounds.

#include <functional>
#include <vector>

namespace nes_oracle {

struct OracleProblem {
  int n = 0;  // variables == equations
  std::vector<double> lower, upper;
  std::function<void(const double* x, double* residuals)> residuals;
};

struct OracleSettings {
  int grid = 100;              // starts per dimension
  int max_newton_iters = 200;
  // Tight enough that tangential (double) roots collapse inside the dedup
  // radius instead of surviving as near-duplicates.
  double target_residual_sq = 1e-26;
  double dedup_radius = 1e-6;
};

// Roots sorted lexicographically; each satisfies the residual target and lies
// inside the (closed) box.
std::vector<std::vector<double>> find_roots(const OracleProblem& problem,
                                            const OracleSettings& settings);

}  // namespace nes_oracle
