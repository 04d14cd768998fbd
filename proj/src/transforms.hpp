#pragma once

// The two transformations from an equation system to an optimization problem:
// a single objective with multiplicative repulsion around already-found roots
// (dynamic radius), and a bi-objective form whose root images lie on the line
// y = 1 - x.

#include <span>
#include <utility>
#include <vector>

#include "problem.hpp"

namespace nes {

struct RepulsionConfig {
  double rho = 0.1;        // penalty scale inside the repulsion radius
  long t_max = 0;          // iteration budget the radius schedule runs over
  double gamma_min = 0.0;  // final repulsion radius
  double gamma_max = 0.0;  // initial repulsion radius
  double zeta_cap = 1e12;  // cap for 1/|erf(rho*d)| as d -> 0
};

// gamma_t = gamma_min + (1 - t/t_max)^2 (gamma_max - gamma_min).
// Throws std::out_of_range unless 0 <= t <= t_max.
double gamma_at(const RepulsionConfig& cfg, long t);

// (0.01, 0.5) times the smallest per-variable range of the problem.
std::pair<double, double> default_gammas(const NesProblem& problem);

// 1/|erf(rho*d)| capped at zeta_cap when d <= gamma, else 1.
double zeta(const RepulsionConfig& cfg, double d, double gamma);

// Deduplicated store of located roots together with their residuals.
class RootArchive {
 public:
  struct Entry {
    DecisionVector x;
    double residual_sq = 0.0;
  };

  explicit RootArchive(double dedup_radius = 0.01) : dedup_radius_(dedup_radius) {}

  // Adds iff residual_sq < 1e-5 and the point is at least dedup_radius away
  // from every stored root.
  bool try_add(std::span<const double> x, double residual_sq);

  double min_distance(std::span<const double> x) const;  // +inf when empty
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  double dedup_radius() const { return dedup_radius_; }

 private:
  std::vector<Entry> entries_;
  double dedup_radius_;
};

// R(x) = g_value * prod_j zeta(rho, ||x - root_j||) over the archive, using
// the radius gamma_t of iteration t. g_value is supplied by the caller (full
// or reduced squared-residual objective).
double repulsion_value(const RepulsionConfig& cfg, double g_value, std::span<const double> x,
                       const RootArchive& archive, long t);

// (x_first + sum|f_i|, 1 - x_first + p*max|f_i|). An empty residual span
// contributes nothing (fully eliminated systems).
std::pair<double, double> mones_objectives(double x_first, std::span<const double> residuals);

}  // namespace nes
