#pragma once

// Adaptive differential evolution with an optional external archive of
// replaced individuals (JADE; Zhang & Sanderson 2009): current-to-pbest/1
// mutation, per-individual CR ~ N(mu_cr, 0.1) and F ~ Cauchy(mu_f, 0.1),
// parameter means adapted from the successful generations.

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "problem.hpp"
#include "rng.hpp"

namespace nes {

struct DeParams {
  int np = 100;
  double p_best = 0.05;      // fraction of the population eligible as pbest
  double c = 0.1;            // adaptation rate for mu_cr / mu_f
  double mu_cr_init = 0.5;
  double mu_f_init = 0.5;
  int archive_cap = -1;      // < 0 means np
};

using ScalarObjective = std::function<double(std::span<const double>)>;

// NaN objectives order as +infinity.
inline double objective_key(double v) {
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

// Reflects v into [lo, hi].
double reflect_into_bounds(double v, double lo, double hi);

// Step-wise engine so callers can interleave generations with archive updates
// and restarts. initialize() and step() each cost exactly np evaluations.
class JadeEngine {
 public:
  JadeEngine(ScalarObjective objective, std::vector<Bounds> bounds, DeParams params, Rng* rng);

  void initialize();  // fresh uniform population, resets mu_cr/mu_f and the archive
  void step();        // one generation

  const std::vector<DecisionVector>& population() const { return pop_; }
  const std::vector<double>& objectives() const { return obj_; }
  int best_index() const;
  long evaluations() const { return evaluations_; }

 private:
  ScalarObjective objective_;
  std::vector<Bounds> bounds_;
  DeParams params_;
  Rng* rng_;

  std::vector<DecisionVector> pop_;
  std::vector<double> obj_;
  std::vector<DecisionVector> inferior_archive_;
  double mu_cr_ = 0.5;
  double mu_f_ = 0.5;
  long evaluations_ = 0;
};

struct JadeResult {
  std::vector<DecisionVector> population;
  std::vector<double> objectives;
  DecisionVector best;
  double best_objective = 0.0;
  std::vector<double> trace;  // best objective after each evaluated generation
  long evaluations = 0;
};

// Runs JADE until the next generation would exceed `budget` evaluations.
JadeResult jade_run(const ScalarObjective& objective, const std::vector<Bounds>& bounds,
                    const DeParams& params, long budget, std::uint64_t seed);

}  // namespace nes
