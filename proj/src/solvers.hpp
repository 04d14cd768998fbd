#pragma once

// End-to-end solvers: the dynamic-repulsion loop over JADE restarts and the
// bi-objective NSGA-II runner. Both work either on the full decision space or
// on the reduced (core-variable) space when a scheme is supplied.

#include <cstdint>
#include <optional>

#include "jade.hpp"
#include "nsga2.hpp"
#include "reduction.hpp"
#include "transforms.hpp"

namespace nes {

struct DrTraceEntry {
  long generation = 0;
  double best_repulsion = 0.0;
  std::size_t archive_size = 0;
};

struct DrResult {
  RootArchive archive{0.01};       // full-space roots
  std::vector<DrTraceEntry> trace; // every restart boundary plus every 10 generations
  long evaluations = 0;
  long restarts = 0;
};

struct DrPolicy {
  bool restart_on_root = true;  // re-initialize after any individual passes the root test
  int stall_generations = 30;   // also restart when the epoch best stops improving
};

// Repeated JADE restarts against the repulsion objective. Whenever an
// individual reaches R(x) < 1e-5 the candidate roots are offered to the
// archive (checked against the full original system) and the population is
// re-initialized; stalled epochs restart as well. The radius schedule runs
// over the global generation counter. With a scheme, the search and the
// repulsion distances live in the core space; archived roots are stored as
// expanded full vectors.
DrResult dr_loop(const NesProblem& problem, const ReductionScheme* scheme, RepulsionConfig cfg,
                 const DeParams& params, long nfes_max, std::uint64_t seed,
                 const DrPolicy& policy = {});

struct MonesResult {
  std::vector<DecisionVector> population_full;  // expanded when a scheme is active
  std::vector<std::array<double, 2>> objectives;
  std::vector<double> x_first;  // first (core) decision variable per individual
  long evaluations = 0;
};

// Bi-objective transformation solved by NSGA-II. The hook receives the
// search-space population and objective images per generation.
MonesResult mones_run(const NesProblem& problem, const ReductionScheme* scheme,
                      const GaParams& params, int max_generations, std::uint64_t seed,
                      const GenerationHook& hook = nullptr);

}  // namespace nes
