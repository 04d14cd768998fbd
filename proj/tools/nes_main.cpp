// Command line front end; talks to the library exclusively through the C API.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nes/nes.h"
#include "root_oracle.hpp"

namespace {

struct ProblemHandle {
  nes_problem* p = nullptr;
  ~ProblemHandle() { nes_problem_free(p); }
};

int open_problem(const std::string& name_or_path, ProblemHandle& h) {
  if (nes_suite_open(name_or_path.c_str(), &h.p) == NES_OK) return 0;
  if (nes_problem_load_file(name_or_path.c_str(), &h.p) == NES_OK) return 0;
  std::fprintf(stderr, "error: %s\n", nes_last_error());
  return 1;
}

int cmd_run(const std::string& config, const std::string& out_dir, int jobs, long long seed) {
  int failed_cells = 0;
  nes_status st = nes_run_experiment(config.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
                                     jobs, seed, &failed_cells);
  if (st == NES_OK) return 0;
  if (st == NES_ERR_CELL_FAILURES) {
    std::fprintf(stderr, "warning: %d cell(s) failed: %s\n", failed_cells, nes_last_error());
    return 2;
  }
  std::fprintf(stderr, "error: %s\n", nes_last_error());
  return 1;
}

int cmd_validate(const std::string& path) {
  ProblemHandle h;
  nes_status st = nes_problem_load_file(path.c_str(), &h.p);
  if (st != NES_OK) {
    std::fprintf(stderr, "invalid: %s\n", nes_last_error());
    return 1;
  }
  int nor = nes_problem_root_count(h.p);
  std::string nor_text = nor == NES_NOR_INFINITE ? "infinite"
                         : nor == NES_NOR_UNKNOWN ? "unknown"
                                                  : std::to_string(nor);
  std::printf("ok: %s (%d variables, %d equations, %s, known roots: %s)\n",
              nes_problem_name(h.p), nes_problem_var_count(h.p),
              nes_problem_equation_count(h.p),
              nes_problem_has_scheme(h.p)
                  ? ("reduced to " + std::to_string(nes_problem_core_count(h.p)) + " core variables")
                        .c_str()
                  : "no reduction scheme",
              nor_text.c_str());
  return 0;
}

int cmd_oracle(const std::string& problem_name, int grid, double dedup, bool plain) {
  ProblemHandle h;
  if (open_problem(problem_name, h) != 0) return 1;

  const int n = nes_problem_var_count(h.p);
  const int m = nes_problem_equation_count(h.p);
  if (n != m) {
    std::fprintf(stderr, "error: the oracle needs a square system (%d variables, %d equations)\n",
                 n, m);
    return 1;
  }

  nes_oracle::OracleProblem op;
  op.n = n;
  op.lower.resize(n);
  op.upper.resize(n);
  if (nes_problem_bounds(h.p, op.lower.data(), op.upper.data()) != NES_OK) {
    std::fprintf(stderr, "error: %s\n", nes_last_error());
    return 1;
  }
  op.residuals = [&](const double* x, double* out) {
    nes_problem_residuals(h.p, x, n, out, m);
  };

  nes_oracle::OracleSettings settings;
  settings.grid = grid;
  settings.dedup_radius = dedup;
  std::vector<std::vector<double>> roots;
  try {
    roots = nes_oracle::find_roots(op, settings);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  if (!plain)
    std::printf("# problem=%s roots=%zu (grid=%d per dimension)\n", nes_problem_name(h.p),
                roots.size(), grid);
  std::vector<double> res(m);
  for (const auto& r : roots) {
    for (int j = 0; j < n; ++j) std::printf(j ? " %.17g" : "%.17g", r[j]);
    if (!plain) {
      nes_problem_residuals(h.p, r.data(), n, res.data(), m);
      double sq = 0.0;
      for (double v : res) sq += v * v;
      std::printf("  # residual_sq=%.3g", sq);
    }
    std::printf("\n");
  }

  int nor = nes_problem_root_count(h.p);
  if (nor >= 0 && static_cast<size_t>(nor) != roots.size()) {
    std::fprintf(stderr, "warning: expected %d roots, found %zu\n", nor, roots.size());
    return 2;
  }
  return 0;
}

// summary.csv rows: problem,algorithm,indicator,best,mean,worst,std
struct SummaryTable {
  std::vector<std::string> problems;  // in file order
  std::map<std::string, std::map<std::string, double>> mean;  // problem -> algo -> mean
};

bool load_summary(const std::string& path, const std::string& indicator, SummaryTable& table) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
    return false;
  }
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string problem, algo, ind, best, mean;
    if (!std::getline(ss, problem, ',') || !std::getline(ss, algo, ',') ||
        !std::getline(ss, ind, ',') || !std::getline(ss, best, ',') ||
        !std::getline(ss, mean, ','))
      continue;
    if (ind != indicator) continue;
    if (!table.mean.count(problem)) table.problems.push_back(problem);
    table.mean[problem][algo] = std::strtod(mean.c_str(), nullptr);
  }
  return true;
}

bool load_number_file(const std::string& path, std::vector<double>& out) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
    return false;
  }
  double v;
  while (in >> v) out.push_back(v);
  return true;
}

int cmd_stats_wilcoxon(const std::string& a_arg, const std::string& b_arg,
                       const std::string& indicator, const std::string& summary) {
  std::vector<double> a, b;
  if (!summary.empty()) {
    SummaryTable table;
    if (!load_summary(summary, indicator, table)) return 1;
    for (const auto& p : table.problems) {
      const auto& row = table.mean.at(p);
      auto ia = row.find(a_arg);
      auto ib = row.find(b_arg);
      if (ia == row.end() || ib == row.end()) continue;
      a.push_back(ia->second);
      b.push_back(ib->second);
    }
    if (a.empty()) {
      std::fprintf(stderr, "error: no aligned '%s' rows for %s and %s in %s\n", indicator.c_str(),
                   a_arg.c_str(), b_arg.c_str(), summary.c_str());
      return 1;
    }
  } else {
    if (!load_number_file(a_arg, a) || !load_number_file(b_arg, b)) return 1;
    if (a.size() != b.size()) {
      std::fprintf(stderr, "error: value files have different lengths (%zu vs %zu)\n", a.size(),
                   b.size());
      return 1;
    }
  }

  double r_plus, r_minus, p_value;
  if (nes_wilcoxon(a.data(), b.data(), a.size(), &r_plus, &r_minus, &p_value) != NES_OK) {
    std::fprintf(stderr, "error: %s\n", nes_last_error());
    return 1;
  }
  std::printf("n = %zu pairs\nR+ = %.1f\nR- = %.1f\np = %.6g\n", a.size(), r_plus, r_minus,
              p_value);
  return 0;
}

int cmd_stats_friedman(const std::string& summary, const std::string& indicator, bool maximize) {
  SummaryTable table;
  if (!load_summary(summary, indicator, table)) return 1;
  if (table.problems.empty()) {
    std::fprintf(stderr, "error: no '%s' rows in %s\n", indicator.c_str(), summary.c_str());
    return 1;
  }
  // Algorithms common to every problem row, in first-seen order.
  std::vector<std::string> algos;
  for (const auto& [algo, value] : table.mean.at(table.problems.front())) {
    (void)value;
    bool everywhere = true;
    for (const auto& p : table.problems)
      if (!table.mean.at(p).count(algo)) everywhere = false;
    if (everywhere) algos.push_back(algo);
  }
  if (algos.size() < 2) {
    std::fprintf(stderr, "error: need at least 2 algorithms with complete '%s' rows\n",
                 indicator.c_str());
    return 1;
  }
  std::vector<double> scores;
  for (const auto& p : table.problems)
    for (const auto& algo : algos) scores.push_back(table.mean.at(p).at(algo));
  std::vector<double> ranks(algos.size());
  if (nes_friedman(scores.data(), table.problems.size(), algos.size(), maximize ? 0 : 1,
                   ranks.data()) != NES_OK) {
    std::fprintf(stderr, "error: %s\n", nes_last_error());
    return 1;
  }
  std::printf("average ranks over %zu problems (%s, rank 1 = best):\n", table.problems.size(),
              indicator.c_str());
  for (size_t i = 0; i < algos.size(); ++i)
    std::printf("  %-12s %.4f\n", algos[i].c_str(), ranks[i]);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-root solver for nonlinear equation systems"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  std::string config, out_dir;
  int jobs = 0;
  long long seed = -1;
  run->add_option("-c,--config", config, "Experiment config file")->required();
  run->add_option("--jobs", jobs, "Parallel worker count");
  run->add_option("--seed", seed, "Global seed override");
  run->add_option("--out", out_dir, "Output directory override");

  auto* validate = app.add_subcommand("validate", "Parse and check a problem file");
  std::string validate_path;
  validate->add_option("file", validate_path, "Problem file")->required();

  auto* oracle = app.add_subcommand("oracle", "Regenerate ground-truth roots (grid + Newton)");
  std::string oracle_problem;
  int grid = 100;
  double dedup = 1e-6;
  bool plain = false;
  oracle->add_option("problem", oracle_problem, "Suite name or problem file")->required();
  oracle->add_option("--grid", grid, "Newton starts per dimension");
  oracle->add_option("--dedup", dedup, "Root deduplication radius");
  oracle->add_flag("--plain", plain, "Print only root coordinates");

  auto* stats = app.add_subcommand("stats", "Nonparametric tests over results");
  std::vector<std::string> wilcoxon_args;
  std::string indicator = "igd", summary, friedman_summary;
  bool maximize = false;
  stats->add_option("--wilcoxon", wilcoxon_args,
                    "Two algorithms (with --summary) or two value files")
      ->expected(2);
  stats->add_option("--indicator", indicator, "Indicator column (default igd)");
  stats->add_option("--summary", summary, "summary.csv produced by 'nes run'");
  stats->add_option("--friedman", friedman_summary, "Friedman ranks over a summary.csv");
  stats->add_flag("--maximize", maximize, "Higher indicator values are better");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config, out_dir, jobs, seed);
  if (validate->parsed()) return cmd_validate(validate_path);
  if (oracle->parsed()) return cmd_oracle(oracle_problem, grid, dedup, plain);
  if (stats->parsed()) {
    if (!wilcoxon_args.empty())
      return cmd_stats_wilcoxon(wilcoxon_args[0], wilcoxon_args[1], indicator, summary);
    if (!friedman_summary.empty()) return cmd_stats_friedman(friedman_summary, indicator, maximize);
    std::fprintf(stderr, "error: stats needs --wilcoxon or --friedman\n");
    return 1;
  }
  return 1;
}
