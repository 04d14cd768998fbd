#pragma once

// Batch experiment runner: (problem x algorithm x run) cells, per-run
// indicator computation, Table-style aggregation, CSV/JSON artifacts.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metrics.hpp"
#include "solvers.hpp"
#include "suite.hpp"

namespace nes {

enum class Algorithm { Mones, VrMones, DrJade, VrDrJade };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

struct ExperimentConfig {
  std::vector<std::string> problems;   // suite names or file paths
  std::vector<Algorithm> algorithms;
  int runs = 30;
  std::uint64_t seed = 1;
  long budget = -1;       // evaluation budget override for the repulsion family
  int generations = 500;  // generation count for the bi-objective family
  int np = 100;           // population of the bi-objective family
  int de_np = 20;         // population of the repulsion family
  int jobs = 1;
  std::string out_dir = "out";
  int front_count = 100;  // reference images for infinite-root problems
};

ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

struct FoundRoot {
  DecisionVector x;
  double residual_sq = 0.0;
};

struct RunReport {
  std::string problem;
  std::string algorithm;
  int run = 0;
  std::uint64_t seed = 0;
  long evaluations = 0;
  long budget = 0;
  double wall_time_s = 0.0;  // reported separately; not part of the canonical JSON
  std::map<std::string, double> indicators;  // igd / nof / rr / qr (subset)
  int success = 0;                           // all known roots found
  std::vector<FoundRoot> roots;
  std::vector<double> igd_trace;             // bi-objective family
  std::vector<DrTraceEntry> repulsion_trace; // repulsion family
};

// Canonical, deterministic JSON for a run (excludes wall time).
std::string run_report_json(const RunReport& report);

struct CellResult {
  std::string problem;
  std::string algorithm;
  std::string error;  // non-empty when the cell could not run
  std::vector<RunReport> runs;
  // indicator -> aggregate over runs; includes the cell-level success rate.
  std::map<std::string, Aggregate> aggregates;
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  int failed_cells = 0;
  std::string summary_csv;
};

// Derives the per-run seed from (global seed, problem name, algorithm, run).
std::uint64_t cell_seed(std::uint64_t global_seed, std::string_view problem, Algorithm algorithm,
                        int run_index);

// Executes every cell (optionally in parallel); output bytes are independent
// of the worker count. When write_files is set, emits
// <out>/<problem>/<algorithm>/run_<k>.json, <out>/summary.csv and
// <out>/timings.csv.
ExperimentResult run_experiment(const ExperimentConfig& config, bool write_files = true);

// Wilcoxon input helper: per-problem means of one indicator for two
// algorithms, in config problem order.
std::vector<std::pair<double, double>> paired_means(const ExperimentResult& result,
                                                    const std::string& algo_a,
                                                    const std::string& algo_b,
                                                    const std::string& indicator);

}  // namespace nes
