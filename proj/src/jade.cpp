#include "jade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nes {

double reflect_into_bounds(double v, double lo, double hi) {
  double range = hi - lo;
  if (v >= lo && v <= hi) return v;
  // Fold into one period of the reflected tiling, then mirror.
  double t = std::fmod(v - lo, 2.0 * range);
  if (t < 0.0) t += 2.0 * range;
  return t <= range ? lo + t : hi - (t - range);
}

JadeEngine::JadeEngine(ScalarObjective objective, std::vector<Bounds> bounds, DeParams params,
                       Rng* rng)
    : objective_(std::move(objective)), bounds_(std::move(bounds)), params_(params), rng_(rng) {
  if (params_.np < 4) throw std::invalid_argument("population size must be at least 4");
  if (bounds_.empty()) throw std::invalid_argument("empty bounds");
  if (params_.archive_cap < 0) params_.archive_cap = params_.np;
}

void JadeEngine::initialize() {
  const int np = params_.np;
  const std::size_t dim = bounds_.size();
  pop_.assign(np, DecisionVector(dim));
  obj_.assign(np, 0.0);
  inferior_archive_.clear();
  mu_cr_ = params_.mu_cr_init;
  mu_f_ = params_.mu_f_init;
  for (int i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < dim; ++j)
      pop_[i][j] = rng_->uniform(bounds_[j].lower, bounds_[j].upper);
    obj_[i] = objective_(pop_[i]);
    ++evaluations_;
  }
}

int JadeEngine::best_index() const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(obj_.size()); ++i)
    if (objective_key(obj_[i]) < objective_key(obj_[best])) best = i;
  return best;
}

void JadeEngine::step() {
  const int np = params_.np;
  const std::size_t dim = bounds_.size();

  // Rank the current population; the top p-fraction serves as pbest pool.
  std::vector<int> order(np);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return objective_key(obj_[a]) < objective_key(obj_[b]);
  });
  int top = std::max(1, static_cast<int>(std::lround(params_.p_best * np)));

  std::vector<DecisionVector> trials(np, DecisionVector(dim));
  std::vector<double> cr(np), f(np);
  for (int i = 0; i < np; ++i) {
    cr[i] = std::clamp(rng_->normal(mu_cr_, 0.1), 0.0, 1.0);
    double fi;
    do {
      fi = rng_->cauchy(mu_f_, 0.1);
    } while (fi <= 0.0);
    f[i] = std::min(fi, 1.0);

    const DecisionVector& pbest = pop_[order[rng_->uniform_int(top)]];
    int r1;
    do {
      r1 = rng_->uniform_int(np);
    } while (r1 == i);
    int pool = np + static_cast<int>(inferior_archive_.size());
    int r2;
    do {
      r2 = rng_->uniform_int(pool);
    } while (r2 == i || r2 == r1);
    const DecisionVector& x2 = r2 < np ? pop_[r2] : inferior_archive_[r2 - np];

    int jrand = rng_->uniform_int(static_cast<int>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
      double v = pop_[i][j] + f[i] * (pbest[j] - pop_[i][j]) + f[i] * (pop_[r1][j] - x2[j]);
      v = reflect_into_bounds(v, bounds_[j].lower, bounds_[j].upper);
      bool cross = rng_->uniform01() <= cr[i] || static_cast<int>(j) == jrand;
      trials[i][j] = cross ? v : pop_[i][j];
    }
  }

  std::vector<double> s_cr, s_f;
  for (int i = 0; i < np; ++i) {
    double trial_obj = objective_(trials[i]);
    ++evaluations_;
    if (objective_key(trial_obj) < objective_key(obj_[i])) {
      inferior_archive_.push_back(pop_[i]);
      s_cr.push_back(cr[i]);
      s_f.push_back(f[i]);
      pop_[i] = std::move(trials[i]);
      obj_[i] = trial_obj;
    }
  }
  while (static_cast<int>(inferior_archive_.size()) > params_.archive_cap) {
    int victim = rng_->uniform_int(static_cast<int>(inferior_archive_.size()));
    inferior_archive_.erase(inferior_archive_.begin() + victim);
  }

  if (!s_cr.empty()) {
    double mean_cr = std::accumulate(s_cr.begin(), s_cr.end(), 0.0) / s_cr.size();
    double num = 0.0, den = 0.0;
    for (double v : s_f) {
      num += v * v;
      den += v;
    }
    mu_cr_ = (1.0 - params_.c) * mu_cr_ + params_.c * mean_cr;
    mu_f_ = (1.0 - params_.c) * mu_f_ + params_.c * (num / den);
  }
}

JadeResult jade_run(const ScalarObjective& objective, const std::vector<Bounds>& bounds,
                    const DeParams& params, long budget, std::uint64_t seed) {
  if (budget < params.np) throw std::invalid_argument("budget smaller than one population");
  Rng rng(seed);
  JadeEngine engine(objective, bounds, params, &rng);
  JadeResult result;

  engine.initialize();
  result.trace.push_back(engine.objectives()[engine.best_index()]);
  while (engine.evaluations() + params.np <= budget) {
    engine.step();
    result.trace.push_back(engine.objectives()[engine.best_index()]);
  }

  int b = engine.best_index();
  result.population = engine.population();
  result.objectives = engine.objectives();
  result.best = result.population[b];
  result.best_objective = result.objectives[b];
  result.evaluations = engine.evaluations();
  return result;
}

}  // namespace nes
