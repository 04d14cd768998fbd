#pragma once

// Performance indicators: inverted generational distance, number of optimal
// solutions found, root ratio, success rate and root quality.

#include <span>
#include <vector>

#include "problem.hpp"
#include "reduction.hpp"

namespace nes {

// A point in the bi-objective image plane.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Mean over the reference set of the distance to the nearest obtained point.
// Returns +inf when `obtained` is empty; throws when the reference is empty.
double igd(std::span<const Point2> obtained, std::span<const Point2> reference);

// Count of reference points with an obtained point within epsilon.
int nof(std::span<const Point2> obtained, std::span<const Point2> reference, double epsilon);

// Reference images on the line y = 1 - x. For problems with finitely many
// known roots: one image per root at x = first (core) variable. Otherwise:
// `count` images with x uniformly spaced over the first (core) variable's
// bounds. Throws when a finite-root problem carries no known roots.
std::vector<Point2> reference_front(const NesProblem& problem, const ReductionScheme* scheme,
                                    int count);

// Average ratio of known roots found over runs: sum(found_i) / (nor * runs).
double root_ratio(std::span<const int> found_counts, int nor);

// Fraction of flagged-successful runs.
double success_rate(std::span<const int> success_flags);

// Mean full-system squared residual over the roots reported by one run;
// NaN when the run reported none.
double quality_of_roots(const NesProblem& problem, std::span<const DecisionVector> roots);

// Number of known roots matched within `radius` (full-space Euclidean).
int count_matched_roots(std::span<const DecisionVector> known,
                        std::span<const DecisionVector> found, double radius);

struct Aggregate {
  double best = 0.0;
  double mean = 0.0;
  double worst = 0.0;
  double std_dev = 0.0;
};

// best = min and worst = max when minimizing (reversed otherwise); population
// standard deviation. NaN entries are ignored; all-NaN input yields NaNs.
Aggregate aggregate_indicator(std::span<const double> values, bool minimize);

}  // namespace nes
