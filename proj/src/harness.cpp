#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace nes {

namespace {

using nlohmann::json;

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_dr_family(Algorithm a) { return a == Algorithm::DrJade || a == Algorithm::VrDrJade; }
bool is_vr(Algorithm a) { return a == Algorithm::VrMones || a == Algorithm::VrDrJade; }

struct ResolvedProblem {
  SuiteEntry entry;  // file-based problems are wrapped into an entry
};

ResolvedProblem resolve_problem(const std::string& name_or_path) {
  if (const SuiteEntry* e = find_suite_entry(name_or_path)) return ResolvedProblem{*e};
  std::ifstream in(name_or_path);
  if (!in)
    throw std::runtime_error("unknown problem '" + name_or_path +
                             "' (not a suite name and not a readable file)");
  std::stringstream ss;
  ss << in.rdbuf();
  ParsedProblemFile pf = parse_problem_file(ss.str());
  SuiteEntry entry{pf.problem.name(), ss.str(), std::move(pf.problem), std::move(pf.scheme),
                   pf.epsilon, 0, {}};
  entry.budget = entry.problem.nfes_max();
  return ResolvedProblem{std::move(entry)};
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Mones: return "MONES";
    case Algorithm::VrMones: return "VR-MONES";
    case Algorithm::DrJade: return "DR-JADE";
    case Algorithm::VrDrJade: return "VR-DR-JADE";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (up == "MONES") return Algorithm::Mones;
  if (up == "VR-MONES") return Algorithm::VrMones;
  if (up == "DR-JADE") return Algorithm::DrJade;
  if (up == "VR-DR-JADE") return Algorithm::VrDrJade;
  return std::nullopt;
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  bool have_problems = false, have_algorithms = false;
  int line_no = 0;
  std::istringstream is{std::string(text)};
  std::string raw;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line{raw};
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key{strip(line.substr(0, eq))};
    std::string value{strip(line.substr(eq + 1))};
    auto split_list = [](std::string_view v) {
      std::vector<std::string> out;
      std::size_t start = 0;
      for (std::size_t i = 0; i <= v.size(); ++i) {
        if (i == v.size() || v[i] == ',') {
          auto item = strip(v.substr(start, i - start));
          if (!item.empty()) out.emplace_back(item);
          start = i + 1;
        }
      }
      return out;
    };
    try {
      if (key == "problems") {
        cfg.problems = split_list(value);
        have_problems = true;
      } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (const auto& nm : split_list(value)) {
          auto a = algorithm_from_name(nm);
          if (!a) throw std::runtime_error("unknown algorithm '" + nm + "'");
          cfg.algorithms.push_back(*a);
        }
        have_algorithms = true;
      } else if (key == "runs") {
        cfg.runs = std::stoi(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "budget") {
        cfg.budget = std::stol(value);
      } else if (key == "generations") {
        cfg.generations = std::stoi(value);
      } else if (key == "np") {
        cfg.np = std::stoi(value);
      } else if (key == "de_np") {
        cfg.de_np = std::stoi(value);
      } else if (key == "jobs") {
        cfg.jobs = std::stoi(value);
      } else if (key == "out") {
        cfg.out_dir = value;
      } else if (key == "front_count") {
        cfg.front_count = std::stoi(value);
      } else {
        throw std::runtime_error("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": bad value for '" +
                               key + "'");
    }
  }
  if (!have_problems || cfg.problems.empty())
    throw std::runtime_error("config must list at least one problem");
  if (!have_algorithms || cfg.algorithms.empty())
    throw std::runtime_error("config must list at least one algorithm");
  if (cfg.runs < 1) throw std::runtime_error("runs must be >= 1");
  if (cfg.np < 4) throw std::runtime_error("np must be >= 4");
  if (cfg.de_np < 4) throw std::runtime_error("de_np must be >= 4");
  if (cfg.generations < 1) throw std::runtime_error("generations must be >= 1");
  if (cfg.jobs < 1) cfg.jobs = 1;
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::uint64_t cell_seed(std::uint64_t global_seed, std::string_view problem, Algorithm algorithm,
                        int run_index) {
  std::uint64_t h = mix64(global_seed ^ fnv1a64(problem));
  h = mix64(h ^ (static_cast<std::uint64_t>(algorithm) + 1));
  h = mix64(h ^ static_cast<std::uint64_t>(run_index));
  return h;
}

namespace {

// Roots reported by a bi-objective run: final-population individuals passing
// the root test, deduplicated at the archive radius.
std::vector<FoundRoot> collect_population_roots(const NesProblem& problem,
                                                const std::vector<DecisionVector>& population) {
  RootArchive archive(0.01);
  for (const auto& x : population) {
    if (!problem.in_bounds(x)) continue;
    archive.try_add(x, problem.residual_sq(x));
  }
  std::vector<FoundRoot> out;
  out.reserve(archive.size());
  for (const auto& e : archive.entries()) out.push_back(FoundRoot{e.x, e.residual_sq});
  return out;
}

RunReport execute_run(const SuiteEntry& entry, Algorithm algorithm, int run_index,
                      const ExperimentConfig& cfg, const std::vector<Point2>& front) {
  const NesProblem& problem = entry.problem;
  const ReductionScheme* scheme = is_vr(algorithm) && entry.scheme ? &*entry.scheme : nullptr;

  RunReport report;
  report.problem = entry.name;
  report.algorithm = algorithm_name(algorithm);
  report.run = run_index;
  report.seed = cell_seed(cfg.seed, entry.name, algorithm, run_index);

  auto t0 = std::chrono::steady_clock::now();
  if (is_dr_family(algorithm)) {
    long budget = cfg.budget > 0 ? cfg.budget : entry.budget;
    report.budget = budget;
    DeParams params;
    params.np = cfg.de_np;
    RepulsionConfig rcfg;  // radii and t_max derived inside dr_loop
    DrResult dr = dr_loop(problem, scheme, rcfg, params, budget, report.seed);
    report.evaluations = dr.evaluations;
    report.repulsion_trace = std::move(dr.trace);
    report.roots.reserve(dr.archive.size());
    for (const auto& e : dr.archive.entries()) report.roots.push_back(FoundRoot{e.x, e.residual_sq});
  } else {
    GaParams params;
    params.np = cfg.np;
    report.budget = static_cast<long>(cfg.np) * (cfg.generations + 1);
    std::vector<double> igd_trace;
    GenerationHook hook = [&](int, const std::vector<DecisionVector>&,
                              const std::vector<std::array<double, 2>>& objs) {
      std::vector<Point2> images;
      images.reserve(objs.size());
      for (const auto& o : objs) images.push_back(Point2{o[0], o[1]});
      igd_trace.push_back(igd(images, front));
    };
    MonesResult mr = mones_run(problem, scheme, params, cfg.generations, report.seed, hook);
    report.evaluations = mr.evaluations;
    report.igd_trace = std::move(igd_trace);

    std::vector<Point2> images;
    images.reserve(mr.objectives.size());
    for (const auto& o : mr.objectives) images.push_back(Point2{o[0], o[1]});
    report.indicators["igd"] = igd(images, front);
    report.indicators["nof"] = nof(images, front, entry.epsilon);
    report.roots = collect_population_roots(problem, mr.population_full);
  }

  std::vector<DecisionVector> found;
  found.reserve(report.roots.size());
  for (const auto& r : report.roots) found.push_back(r.x);
  report.indicators["qr"] = quality_of_roots(problem, found);
  if (problem.nor().is_finite()) {
    int matched = count_matched_roots(problem.known_roots(), found, 0.01);
    report.indicators["rr"] = static_cast<double>(matched) / problem.nor().count;
    report.success = matched == problem.nor().count ? 1 : 0;
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

json run_report_to_json(const RunReport& r) {
  json j;
  j["problem"] = r.problem;
  j["algorithm"] = r.algorithm;
  j["run"] = r.run;
  j["seed"] = r.seed;
  j["evaluations"] = r.evaluations;
  j["budget"] = r.budget;
  json ind = json::object();
  for (const auto& [k, v] : r.indicators) ind[k] = v;  // NaN serializes as null
  j["indicators"] = ind;
  if (!r.indicators.count("rr")) j["success"] = nullptr;
  else j["success"] = r.success != 0;
  json roots = json::array();
  for (const auto& root : r.roots) {
    json jr;
    jr["x"] = root.x;
    jr["residual_sq"] = root.residual_sq;
    roots.push_back(std::move(jr));
  }
  j["roots"] = std::move(roots);
  if (!r.igd_trace.empty()) {
    j["trace"] = {{"kind", "igd"}, {"values", r.igd_trace}};
  } else {
    json entries = json::array();
    for (const auto& e : r.repulsion_trace)
      entries.push_back({e.generation, e.best_repulsion, e.archive_size});
    j["trace"] = {{"kind", "repulsion"}, {"entries", std::move(entries)}};
  }
  return j;
}

constexpr const char* kIndicatorOrder[] = {"igd", "nof", "rr", "sr", "qr"};

bool indicator_minimized(std::string_view name) { return name == "igd" || name == "qr"; }

}  // namespace

std::string run_report_json(const RunReport& report) {
  return run_report_to_json(report).dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& config, bool write_files) {
  struct Cell {
    ResolvedProblem resolved;
    Algorithm algorithm;
    std::vector<Point2> front;
    std::string error;
  };

  std::vector<Cell> cells;
  for (const auto& pname : config.problems) {
    ResolvedProblem rp = [&] {
      try {
        return resolve_problem(pname);
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string("config error: ") + e.what());
      }
    }();
    for (Algorithm a : config.algorithms) {
      Cell cell{rp, a, {}, {}};
      if (is_vr(a) && !rp.entry.scheme)
        cell.error = "problem has no reduction scheme";
      else if (!is_dr_family(a)) {
        const ReductionScheme* scheme = is_vr(a) && rp.entry.scheme ? &*rp.entry.scheme : nullptr;
        try {
          cell.front = reference_front(rp.entry.problem, scheme, config.front_count);
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
      }
      cells.push_back(std::move(cell));
    }
  }

  // Flatten runnable (cell, run) pairs and execute, possibly concurrently.
  struct Task {
    std::size_t cell;
    int run;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (!cells[c].error.empty()) continue;
    for (int r = 0; r < config.runs; ++r) tasks.push_back(Task{c, r});
  }
  std::vector<std::vector<RunReport>> reports(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c].error.empty()) reports[c].resize(config.runs);

  const int workers = std::max(1, std::min<int>(config.jobs, static_cast<int>(tasks.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= tasks.size() || failed.load()) return;
      const Task& task = tasks[k];
      const Cell& cell = cells[task.cell];
      try {
        reports[task.cell][task.run] =
            execute_run(cell.resolved.entry, cell.algorithm, task.run, config, cell.front);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        failure_message = e.what();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("run failed: " + failure_message);

  ExperimentResult result;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult cr;
    cr.problem = cells[c].resolved.entry.name;
    cr.algorithm = algorithm_name(cells[c].algorithm);
    cr.error = cells[c].error;
    if (!cr.error.empty()) {
      ++result.failed_cells;
      result.cells.push_back(std::move(cr));
      continue;
    }
    cr.runs = std::move(reports[c]);
    for (const char* ind : kIndicatorOrder) {
      if (std::string_view(ind) == "sr") {
        if (!cr.runs.front().indicators.count("rr")) continue;
        std::vector<int> flags;
        for (const auto& r : cr.runs) flags.push_back(r.success);
        double sr = success_rate(flags);
        cr.aggregates["sr"] = Aggregate{sr, sr, sr, 0.0};
        continue;
      }
      if (!cr.runs.front().indicators.count(ind)) continue;
      std::vector<double> values;
      for (const auto& r : cr.runs) values.push_back(r.indicators.at(ind));
      cr.aggregates[ind] = aggregate_indicator(values, indicator_minimized(ind));
    }
    result.cells.push_back(std::move(cr));
  }

  std::ostringstream csv;
  csv << "problem,algorithm,indicator,best,mean,worst,std\n";
  for (const CellResult& cr : result.cells) {
    if (!cr.error.empty()) continue;
    for (const char* ind : kIndicatorOrder) {
      auto it = cr.aggregates.find(ind);
      if (it == cr.aggregates.end()) continue;
      const Aggregate& a = it->second;
      csv << cr.problem << ',' << cr.algorithm << ',' << ind << ',' << format_g17(a.best) << ','
          << format_g17(a.mean) << ',' << format_g17(a.worst) << ',' << format_g17(a.std_dev)
          << "\n";
    }
  }
  result.summary_csv = csv.str();

  if (write_files) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    std::ostringstream timings;
    timings << "problem,algorithm,run,wall_time_s\n";
    for (const CellResult& cr : result.cells) {
      if (!cr.error.empty()) continue;
      fs::path dir = fs::path(config.out_dir) / cr.problem / cr.algorithm;
      fs::create_directories(dir);
      for (const RunReport& r : cr.runs) {
        std::ofstream out(dir / ("run_" + std::to_string(r.run) + ".json"), std::ios::binary);
        out << run_report_json(r);
        timings << cr.problem << ',' << cr.algorithm << ',' << r.run << ','
                << format_g17(r.wall_time_s) << "\n";
      }
    }
    std::ofstream csv_out(fs::path(config.out_dir) / "summary.csv", std::ios::binary);
    csv_out << result.summary_csv;
    std::ofstream timing_out(fs::path(config.out_dir) / "timings.csv", std::ios::binary);
    timing_out << timings.str();
  }
  return result;
}

std::vector<std::pair<double, double>> paired_means(const ExperimentResult& result,
                                                    const std::string& algo_a,
                                                    const std::string& algo_b,
                                                    const std::string& indicator) {
  std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> by_problem;
  std::vector<std::string> order;
  for (const CellResult& cr : result.cells) {
    if (!cr.error.empty()) continue;
    auto it = cr.aggregates.find(indicator);
    if (it == cr.aggregates.end()) continue;
    if (!by_problem.count(cr.problem)) order.push_back(cr.problem);
    if (cr.algorithm == algo_a) by_problem[cr.problem].first = it->second.mean;
    else if (cr.algorithm == algo_b) by_problem[cr.problem].second = it->second.mean;
    else by_problem.try_emplace(cr.problem);
  }
  std::vector<std::pair<double, double>> pairs;
  for (const auto& p : order) {
    const auto& [a, b] = by_problem[p];
    if (a && b) pairs.emplace_back(*a, *b);
  }
  return pairs;
}

}  // namespace nes
