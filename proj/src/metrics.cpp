#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nes {

namespace {

double min_distance_to(std::span<const Point2> pts, const Point2& v) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point2& p : pts) {
    double dx = v.x - p.x;
    double dy = v.y - p.y;
    best = std::min(best, std::sqrt(dx * dx + dy * dy));
  }
  return best;
}

}  // namespace

double igd(std::span<const Point2> obtained, std::span<const Point2> reference) {
  if (reference.empty()) throw std::invalid_argument("reference set is empty");
  if (obtained.empty()) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const Point2& v : reference) sum += min_distance_to(obtained, v);
  return sum / static_cast<double>(reference.size());
}

int nof(std::span<const Point2> obtained, std::span<const Point2> reference, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  int count = 0;
  for (const Point2& v : reference)
    if (min_distance_to(obtained, v) <= epsilon) ++count;
  return count;
}

std::vector<Point2> reference_front(const NesProblem& problem, const ReductionScheme* scheme,
                                    int count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  const int first_var = scheme ? scheme->core_vars().front() : 1;
  std::vector<Point2> out;

  if (problem.nor().is_finite()) {
    if (problem.known_roots().empty())
      throw std::invalid_argument("problem " + problem.name() +
                                  " has a finite root count but no known roots");
    out.reserve(problem.known_roots().size());
    for (const auto& r : problem.known_roots()) {
      double xr = r[first_var - 1];
      out.push_back(Point2{xr, 1.0 - xr});
    }
    return out;
  }

  const Bounds& b = problem.bounds()[first_var - 1];
  out.reserve(count);
  if (count == 1) {
    out.push_back(Point2{b.lower, 1.0 - b.lower});
    return out;
  }
  double step = (b.upper - b.lower) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    double xr = b.lower + step * i;
    out.push_back(Point2{xr, 1.0 - xr});
  }
  return out;
}

double root_ratio(std::span<const int> found_counts, int nor) {
  if (nor < 1) throw std::invalid_argument("nor must be >= 1");
  if (found_counts.empty()) throw std::invalid_argument("no runs");
  long total = 0;
  for (int c : found_counts) total += c;
  return static_cast<double>(total) /
         (static_cast<double>(nor) * static_cast<double>(found_counts.size()));
}

double success_rate(std::span<const int> success_flags) {
  if (success_flags.empty()) throw std::invalid_argument("no runs");
  long hits = 0;
  for (int f : success_flags) hits += f ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(success_flags.size());
}

double quality_of_roots(const NesProblem& problem, std::span<const DecisionVector> roots) {
  if (roots.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (const auto& r : roots) sum += problem.residual_sq(r);
  return sum / static_cast<double>(roots.size());
}

int count_matched_roots(std::span<const DecisionVector> known,
                        std::span<const DecisionVector> found, double radius) {
  int matched = 0;
  for (const auto& k : known) {
    for (const auto& f : found) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k.size(); ++j) {
        double d = k[j] - f[j];
        acc += d * d;
      }
      if (std::sqrt(acc) < radius) {
        ++matched;
        break;
      }
    }
  }
  return matched;
}

Aggregate aggregate_indicator(std::span<const double> values, bool minimize) {
  std::vector<double> v;
  for (double x : values)
    if (!std::isnan(x)) v.push_back(x);
  if (v.empty()) {
    double nan = std::numeric_limits<double>::quiet_NaN();
    return Aggregate{nan, nan, nan, nan};
  }
  double lo = *std::min_element(v.begin(), v.end());
  double hi = *std::max_element(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  return Aggregate{minimize ? lo : hi, mean, minimize ? hi : lo, std::sqrt(var)};
}

}  // namespace nes
