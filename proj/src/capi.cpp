#include "nes/nes.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "harness.hpp"
#include "problem_io.hpp"
#include "stats.hpp"
#include "suite.hpp"

using namespace nes;

struct nes_problem {
  ParsedProblemFile pf;
  std::string printed;  // lazily filled canonical text
};

namespace {

thread_local std::string g_last_error = "";

nes_status set_error(nes_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
nes_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return set_error(NES_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(NES_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return set_error(NES_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* nes_version(void) { return "1.0.0"; }

const char* nes_last_error(void) { return g_last_error.c_str(); }

nes_status nes_problem_parse(const char* text, nes_problem** out) {
  if (!text || !out) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    auto* p = new nes_problem{parse_problem_file(text), {}};
    *out = p;
    return NES_OK;
  });
}

nes_status nes_problem_load_file(const char* path, nes_problem** out) {
  if (!path || !out) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  std::ifstream in(path);
  if (!in) return set_error(NES_ERR_IO, std::string("cannot open '") + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return nes_problem_parse(ss.str().c_str(), out);
}

void nes_problem_free(nes_problem* p) { delete p; }

const char* nes_problem_name(const nes_problem* p) { return p->pf.problem.name().c_str(); }
int nes_problem_var_count(const nes_problem* p) { return p->pf.problem.var_count(); }
int nes_problem_equation_count(const nes_problem* p) { return p->pf.problem.equation_count(); }
int nes_problem_has_scheme(const nes_problem* p) { return p->pf.scheme ? 1 : 0; }

int nes_problem_core_count(const nes_problem* p) {
  return p->pf.scheme ? p->pf.scheme->core_count() : p->pf.problem.var_count();
}

int nes_problem_root_count(const nes_problem* p) {
  RootCount nor = p->pf.problem.nor();
  switch (nor.kind) {
    case RootCount::Kind::Finite: return nor.count;
    case RootCount::Kind::Infinite: return NES_NOR_INFINITE;
    case RootCount::Kind::Unknown: return NES_NOR_UNKNOWN;
  }
  return NES_NOR_UNKNOWN;
}

nes_status nes_problem_bounds(const nes_problem* p, double* lower, double* upper) {
  if (!p || !lower || !upper) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  const auto& bounds = p->pf.problem.bounds();
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    lower[j] = bounds[j].lower;
    upper[j] = bounds[j].upper;
  }
  return NES_OK;
}

nes_status nes_problem_residuals(const nes_problem* p, const double* x, size_t n, double* out,
                                 size_t m) {
  if (!p || !x || !out) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    p->pf.problem.residuals_into({x, n}, {out, m});
    return NES_OK;
  });
}

nes_status nes_problem_residual_sq(const nes_problem* p, const double* x, size_t n, double* out) {
  if (!p || !x || !out) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = p->pf.problem.residual_sq({x, n});
    return NES_OK;
  });
}

nes_status nes_problem_in_bounds(const nes_problem* p, const double* x, size_t n, int* out) {
  if (!p || !x || !out) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = p->pf.problem.in_bounds({x, n}) ? 1 : 0;
    return NES_OK;
  });
}

nes_status nes_problem_print(const nes_problem* p, char* buf, size_t cap, size_t* needed) {
  if (!p || !needed) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    auto* mp = const_cast<nes_problem*>(p);
    if (mp->printed.empty()) mp->printed = print_problem_file(p->pf);
    *needed = mp->printed.size();
    if (buf && cap > 0) {
      size_t n = std::min(cap - 1, mp->printed.size());
      std::memcpy(buf, mp->printed.data(), n);
      buf[n] = '\0';
    }
    return NES_OK;
  });
}

size_t nes_suite_count(void) { return load_suite().size(); }

const char* nes_suite_name(size_t index) {
  const auto& suite = load_suite();
  if (index >= suite.size()) return nullptr;
  return suite[index].name.c_str();
}

nes_status nes_suite_open(const char* name, nes_problem** out) {
  if (!name || !out) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  const SuiteEntry* e = find_suite_entry(name);
  if (!e) return set_error(NES_ERR_NOT_FOUND, std::string("no suite problem named '") + name + "'");
  return nes_problem_parse(e->file_text.c_str(), out);
}

const char* nes_suite_file_text(const char* name) {
  if (!name) return nullptr;
  const SuiteEntry* e = find_suite_entry(name);
  return e ? e->file_text.c_str() : nullptr;
}

nes_status nes_suite_ground_truth(const char* name, double* out, size_t cap, size_t* count,
                                  size_t* dim) {
  if (!name || !count || !dim) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  const SuiteEntry* e = find_suite_entry(name);
  if (!e) return set_error(NES_ERR_NOT_FOUND, std::string("no suite problem named '") + name + "'");
  return guarded([&] {
    const auto& roots = ground_truth(*e);
    *count = roots.size();
    *dim = roots.empty() ? 0 : roots.front().size();
    if (out) {
      size_t written = 0;
      for (const auto& r : roots) {
        for (double v : r) {
          if (written >= cap) return NES_OK;
          out[written++] = v;
        }
      }
    }
    return NES_OK;
  });
}

nes_status nes_run_experiment(const char* config_path, const char* out_dir, int jobs,
                              int64_t seed, int* failed_cells) {
  if (!config_path) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL config path");
  return guarded([&]() -> nes_status {
    ExperimentConfig cfg = parse_config_file(config_path);
    if (out_dir) cfg.out_dir = out_dir;
    if (jobs > 0) cfg.jobs = jobs;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    ExperimentResult result = run_experiment(cfg);
    if (failed_cells) *failed_cells = result.failed_cells;
    if (result.failed_cells > 0) {
      std::string detail;
      for (const auto& cell : result.cells) {
        if (cell.error.empty()) continue;
        if (!detail.empty()) detail += "; ";
        detail += cell.problem + "/" + cell.algorithm + ": " + cell.error;
      }
      return set_error(NES_ERR_CELL_FAILURES, detail);
    }
    return NES_OK;
  });
}

nes_status nes_wilcoxon(const double* a, const double* b, size_t n, double* r_plus,
                        double* r_minus, double* p_value) {
  if (!a || !b || !r_plus || !r_minus || !p_value)
    return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    std::vector<std::pair<double, double>> pairs(n);
    for (size_t i = 0; i < n; ++i) pairs[i] = {a[i], b[i]};
    WilcoxonResult w = wilcoxon_signed_rank(pairs);
    *r_plus = w.r_plus;
    *r_minus = w.r_minus;
    *p_value = w.p_value;
    return NES_OK;
  });
}

nes_status nes_friedman(const double* scores, size_t n_problems, size_t n_algorithms,
                        int minimize, double* avg_ranks) {
  if (!scores || !avg_ranks) return set_error(NES_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    std::vector<std::vector<double>> matrix(n_problems, std::vector<double>(n_algorithms));
    for (size_t p = 0; p < n_problems; ++p)
      for (size_t a = 0; a < n_algorithms; ++a) matrix[p][a] = scores[p * n_algorithms + a];
    auto ranks = friedman_ranks(matrix, minimize != 0);
    for (size_t a = 0; a < n_algorithms; ++a) avg_ranks[a] = ranks[a];
    return NES_OK;
  });
}

}  // extern "C"
