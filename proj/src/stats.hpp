#pragma once

// Nonparametric tests: Wilcoxon signed-rank (exact two-sided p for small
// samples) and Friedman average ranks.

#include <span>
#include <utility>
#include <vector>

namespace nes {

struct WilcoxonResult {
  double r_plus = 0.0;   // rank sum of pairs where a < b
  double r_minus = 0.0;  // rank sum of pairs where a > b
  double p_value = 0.0;  // two-sided
  int n_used = 0;        // pairs remaining after dropping zero differences
};

// Zero differences are dropped; ties share average ranks. The p-value comes
// from the exact signed-rank distribution for n_used <= 25 and from a normal
// approximation (with tie correction) above. Throws when fewer than 5 pairs
// are supplied or all differences are zero.
WilcoxonResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs);

// Average rank per algorithm (columns) over problems (rows); rank 1 is best.
// Ties share average ranks. Throws on ragged input or fewer than 2 rows or
// columns.
std::vector<double> friedman_ranks(const std::vector<std::vector<double>>& scores,
                                   bool minimize);

}  // namespace nes
