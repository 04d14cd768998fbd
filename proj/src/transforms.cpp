#include "transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nes {

double gamma_at(const RepulsionConfig& cfg, long t) {
  if (t < 0 || t > cfg.t_max) throw std::out_of_range("iteration index outside [0, t_max]");
  double lambda = 1.0 - static_cast<double>(t) / static_cast<double>(cfg.t_max);
  return cfg.gamma_min + lambda * lambda * (cfg.gamma_max - cfg.gamma_min);
}

std::pair<double, double> default_gammas(const NesProblem& problem) {
  double min_range = std::numeric_limits<double>::infinity();
  for (const Bounds& b : problem.bounds()) min_range = std::min(min_range, b.upper - b.lower);
  return {0.01 * min_range, 0.5 * min_range};
}

double zeta(const RepulsionConfig& cfg, double d, double gamma) {
  if (d > gamma) return 1.0;
  double e = std::fabs(std::erf(cfg.rho * d));
  if (e <= 0.0) return cfg.zeta_cap;
  return std::min(1.0 / e, cfg.zeta_cap);
}

bool RootArchive::try_add(std::span<const double> x, double residual_sq) {
  if (!(residual_sq < kRootThreshold)) return false;
  if (min_distance(x) < dedup_radius_) return false;
  entries_.push_back(Entry{DecisionVector(x.begin(), x.end()), residual_sq});
  return true;
}

double RootArchive::min_distance(std::span<const double> x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Entry& e : entries_) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      double d = x[j] - e.x[j];
      acc += d * d;
    }
    best = std::min(best, std::sqrt(acc));
  }
  return best;
}

double repulsion_value(const RepulsionConfig& cfg, double g_value, std::span<const double> x,
                       const RootArchive& archive, long t) {
  double gamma = gamma_at(cfg, t);
  double r = g_value;
  for (const auto& e : archive.entries()) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      double d = x[j] - e.x[j];
      acc += d * d;
    }
    r *= zeta(cfg, std::sqrt(acc), gamma);
  }
  return r;
}

std::pair<double, double> mones_objectives(double x_first, std::span<const double> residuals) {
  double sum_abs = 0.0;
  double max_abs = 0.0;
  for (double r : residuals) {
    double a = std::fabs(r);
    sum_abs += a;
    max_abs = std::max(max_abs, a);
  }
  double beta2 = static_cast<double>(residuals.size()) * max_abs;
  return {x_first + sum_abs, 1.0 - x_first + beta2};
}

}  // namespace nes
