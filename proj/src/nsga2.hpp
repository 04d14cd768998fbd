#pragma once

// Elitist non-dominated sorting genetic algorithm (NSGA-II; Deb et al. 2002):
// fast non-dominated sorting, crowding-distance truncation, binary tournament
// on (rank, crowding), simulated binary crossover and polynomial mutation.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "problem.hpp"

namespace nes {

struct GaParams {
  int np = 100;                 // must be even
  double crossover_prob = 0.9;
  double crossover_eta = 20.0;
  double mutation_prob = -1.0;  // < 0 means 1/n
  double mutation_eta = 20.0;
};

using BiObjective = std::function<std::array<double, 2>(std::span<const double>)>;

// Called after the initial evaluation (generation 0) and after each
// generation with the current population and its objective values.
using GenerationHook =
    std::function<void(int generation, const std::vector<DecisionVector>& population,
                       const std::vector<std::array<double, 2>>& objectives)>;

struct Nsga2Result {
  std::vector<DecisionVector> population;
  std::vector<std::array<double, 2>> objectives;
  long evaluations = 0;
};

// (mu + lambda) elitist loop; np*(max_generations + 1) evaluations total.
Nsga2Result nsga2_run(const BiObjective& objective, const std::vector<Bounds>& bounds,
                      const GaParams& params, int max_generations, std::uint64_t seed,
                      const GenerationHook& hook = nullptr);

// Fast non-dominated sort; returns front index per individual (0 = best).
// NaN objective components order as +infinity.
std::vector<int> nondominated_ranks(const std::vector<std::array<double, 2>>& objectives);

}  // namespace nes
