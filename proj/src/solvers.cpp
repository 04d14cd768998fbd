#include "solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nes {

DrResult dr_loop(const NesProblem& problem, const ReductionScheme* scheme, RepulsionConfig cfg,
                 const DeParams& params, long nfes_max, std::uint64_t seed,
                 const DrPolicy& policy) {
  if (nfes_max <= 0) throw std::invalid_argument("nfes_max must be positive");
  const int np = params.np;
  if (nfes_max < np) throw std::invalid_argument("nfes_max smaller than one population");

  std::vector<Bounds> bounds = scheme ? scheme->core_bounds(problem) : problem.bounds();
  if (cfg.gamma_max <= 0.0) {
    double min_range = std::numeric_limits<double>::infinity();
    for (const Bounds& b : bounds) min_range = std::min(min_range, b.upper - b.lower);
    cfg.gamma_min = 0.01 * min_range;
    cfg.gamma_max = 0.5 * min_range;
  }
  if (cfg.t_max <= 0) cfg.t_max = nfes_max / np;

  DrResult result;
  // Search-space archive drives repulsion distances and deduplication.
  RootArchive search_archive(0.01);

  long evaluations = 0;
  long t = 0;  // global generation counter
  auto g_value = [&](std::span<const double> x) {
    return scheme ? reduced_objective(problem, *scheme, x, ObjectiveKind::Sq).value
                  : problem.residual_sq(x);
  };
  auto objective = [&](std::span<const double> x) {
    ++evaluations;
    return repulsion_value(cfg, g_value(x), x, search_archive, std::min(t, cfg.t_max));
  };

  Rng rng(seed);
  JadeEngine engine(objective, bounds, params, &rng);

  bool need_init = true;
  double epoch_best = std::numeric_limits<double>::infinity();
  int stalled_generations = 0;
  while (evaluations + np <= nfes_max) {
    if (need_init) {
      engine.initialize();
      need_init = false;
      epoch_best = std::numeric_limits<double>::infinity();
      stalled_generations = 0;
    } else {
      engine.step();
    }
    t = evaluations / np;

    bool threshold_hit = false;
    for (int i = 0; i < np; ++i) {
      if (!(engine.objectives()[i] < kRootThreshold)) continue;
      threshold_hit = true;
      const DecisionVector& x = engine.population()[i];
      DecisionVector full;
      if (scheme) {
        full = reduced_objective(problem, *scheme, x, ObjectiveKind::Sq).best.full;
      } else {
        full = x;
      }
      // Roots must hold on the full original system; a clamped expansion can
      // have a small reduced objective but violated eliminated equations.
      // Core distance never exceeds full distance, so a successful core add
      // implies the full-space entry is clear of the dedup radius too.
      double full_res = problem.residual_sq(full);
      if (search_archive.try_add(x, full_res)) result.archive.try_add(full, full_res);
    }

    double best_r = engine.objectives()[engine.best_index()];
    if (objective_key(best_r) < epoch_best) {
      epoch_best = objective_key(best_r);
      stalled_generations = 0;
    } else {
      ++stalled_generations;
    }

    bool restart = (threshold_hit && policy.restart_on_root) ||
                   stalled_generations >= policy.stall_generations;
    if (restart) {
      need_init = true;
      ++result.restarts;
    }
    if (restart || t % 10 == 0)
      result.trace.push_back(DrTraceEntry{t, best_r, result.archive.size()});
  }

  result.evaluations = evaluations;
  if (engine.evaluations() != evaluations)
    throw std::logic_error("evaluation accounting mismatch in dr_loop");
  return result;
}

MonesResult mones_run(const NesProblem& problem, const ReductionScheme* scheme,
                      const GaParams& params, int max_generations, std::uint64_t seed,
                      const GenerationHook& hook) {
  long evaluations = 0;
  BiObjective objective;
  std::vector<Bounds> bounds;
  if (scheme) {
    bounds = scheme->core_bounds(problem);
    objective = [&](std::span<const double> core) -> std::array<double, 2> {
      ++evaluations;
      auto ro = reduced_objective(problem, *scheme, core, ObjectiveKind::L1);
      auto [g1, g2] = mones_objectives(core[0], ro.retained_residuals);
      return {g1, g2};
    };
  } else {
    bounds = problem.bounds();
    std::vector<double> scratch(problem.equation_count());
    objective = [&problem, &evaluations,
                 scratch](std::span<const double> x) mutable -> std::array<double, 2> {
      ++evaluations;
      problem.residuals_into(x, scratch);
      auto [g1, g2] = mones_objectives(x[0], scratch);
      return {g1, g2};
    };
  }

  Nsga2Result ga = nsga2_run(objective, bounds, params, max_generations, seed, hook);
  if (ga.evaluations != evaluations)
    throw std::logic_error("evaluation accounting mismatch in mones_run");

  MonesResult result;
  result.objectives = std::move(ga.objectives);
  result.evaluations = evaluations;
  result.x_first.reserve(ga.population.size());
  for (const auto& x : ga.population) result.x_first.push_back(x[0]);
  if (scheme) {
    result.population_full = expand_population(problem, *scheme, ga.population);
  } else {
    result.population_full = std::move(ga.population);
  }
  return result;
}

}  // namespace nes
