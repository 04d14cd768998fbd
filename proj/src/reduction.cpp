#include "reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace nes {

ReductionScheme::ReductionScheme(int var_count, int eq_count, std::vector<ReducedVar> reduced)
    : reduced_(std::move(reduced)) {
  std::set<int> reduced_set, eliminated_set;
  for (const auto& rv : reduced_) {
    reduced_set.insert(rv.index);
    eliminated_set.insert(rv.eliminated_eq);
  }
  for (int v = 1; v <= var_count; ++v)
    if (!reduced_set.count(v)) core_vars_.push_back(v);
  for (int e = 1; e <= eq_count; ++e)
    if (!eliminated_set.count(e)) retained_eqs_.push_back(e);
}

std::vector<Bounds> ReductionScheme::core_bounds(const NesProblem& problem) const {
  std::vector<Bounds> out;
  out.reserve(core_vars_.size());
  for (int v : core_vars_) out.push_back(problem.bounds()[v - 1]);
  return out;
}

std::vector<double> ReductionScheme::core_of(std::span<const double> full) const {
  std::vector<double> out;
  out.reserve(core_vars_.size());
  for (int v : core_vars_) out.push_back(full[v - 1]);
  return out;
}

bool ReductionScheme::operator==(const ReductionScheme& other) const {
  if (core_vars_ != other.core_vars_ || retained_eqs_ != other.retained_eqs_ ||
      reduced_.size() != other.reduced_.size())
    return false;
  for (std::size_t i = 0; i < reduced_.size(); ++i) {
    if (reduced_[i].index != other.reduced_[i].index ||
        reduced_[i].eliminated_eq != other.reduced_[i].eliminated_eq ||
        !structurally_equal(reduced_[i].relation, other.reduced_[i].relation))
      return false;
  }
  return true;
}

std::vector<std::string> validate_scheme(const NesProblem& problem,
                                         const ReductionScheme& scheme) {
  std::vector<std::string> violations;
  const int n = problem.var_count();
  const int m = problem.equation_count();

  std::set<int> reduced_seen, eliminated_seen;
  std::set<int> available(scheme.core_vars().begin(), scheme.core_vars().end());

  for (const auto& rv : scheme.reduced_vars()) {
    if (rv.index < 1 || rv.index > n) {
      violations.push_back("reduced variable x" + std::to_string(rv.index) + " does not exist");
      continue;
    }
    if (!reduced_seen.insert(rv.index).second)
      violations.push_back("x" + std::to_string(rv.index) + " is reduced more than once");
    if (rv.eliminated_eq < 1 || rv.eliminated_eq > m)
      violations.push_back("eliminated equation " + std::to_string(rv.eliminated_eq) +
                           " does not exist");
    else if (!eliminated_seen.insert(rv.eliminated_eq).second)
      violations.push_back("equation " + std::to_string(rv.eliminated_eq) +
                           " is eliminated more than once");

    std::set<int> refs;
    rv.relation.collect_variables(refs);
    if (refs.count(rv.index))
      violations.push_back("relation for x" + std::to_string(rv.index) +
                           " references the variable it defines");
    for (int r : refs) {
      if (r != rv.index && !available.count(r))
        violations.push_back("relation for x" + std::to_string(rv.index) + " references x" +
                             std::to_string(r) +
                             ", which is neither a core variable nor an earlier reduced one");
    }
    available.insert(rv.index);
  }

  // Core/reduced must partition the variables, eliminated/retained the equations.
  if (static_cast<int>(scheme.core_vars().size() + scheme.reduced_vars().size()) != n ||
      static_cast<int>(reduced_seen.size() + scheme.core_vars().size()) != n)
    violations.push_back("core and reduced variables do not partition the variable set");
  if (static_cast<int>(scheme.retained_eqs().size() + scheme.reduced_vars().size()) != m)
    violations.push_back("eliminated and retained equations do not partition the equation set");
  if (scheme.reduced_vars().empty())
    violations.push_back("scheme reduces no variables");

  return violations;
}

namespace {

double clamp_to_nearest(double v, const Bounds& b) {
  if (std::isnan(v)) return b.upper;
  if (v < b.lower) return b.lower;
  if (v > b.upper) return b.upper;
  return v;
}

}  // namespace

std::vector<ExpandedCandidate> expand_individual(const NesProblem& problem,
                                                 const ReductionScheme& scheme,
                                                 std::span<const double> core) {
  if (core.size() != scheme.core_vars().size())
    throw std::invalid_argument("core vector has wrong dimension");

  const auto& bounds = problem.bounds();
  ExpandedCandidate seed;
  seed.full.assign(problem.var_count(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < core.size(); ++i)
    seed.full[scheme.core_vars()[i] - 1] = core[i];

  std::vector<ExpandedCandidate> states{std::move(seed)};
  std::vector<ExpandedCandidate> next;
  for (const auto& rv : scheme.reduced_vars()) {
    const Bounds& b = bounds[rv.index - 1];
    next.clear();
    for (const auto& st : states) {
      std::vector<double> raw;
      raw.reserve(rv.relation.candidates.size());
      for (const auto& cand : rv.relation.candidates) raw.push_back(cand->eval(st.full));

      if (raw.size() == 1) {
        double v = raw[0];
        bool ok = !std::isnan(v) && b.lower <= v && v <= b.upper;
        ExpandedCandidate nc = st;
        nc.full[rv.index - 1] = ok ? v : clamp_to_nearest(v, b);
        if (!ok) {
          nc.feasible = false;
          nc.clamped.push_back(rv.index);
        }
        next.push_back(std::move(nc));
        continue;
      }

      // Multi-valued: keep in-bound branches, deduplicated by value.
      std::vector<double> kept;
      for (double v : raw) {
        if (!std::isnan(v) && b.lower <= v && v <= b.upper &&
            std::find(kept.begin(), kept.end(), v) == kept.end())
          kept.push_back(v);
      }
      if (!kept.empty()) {
        for (double v : kept) {
          ExpandedCandidate nc = st;
          nc.full[rv.index - 1] = v;
          next.push_back(std::move(nc));
        }
      } else {
        for (double v : raw) {
          ExpandedCandidate nc = st;
          nc.full[rv.index - 1] = clamp_to_nearest(v, b);
          nc.feasible = false;
          nc.clamped.push_back(rv.index);
          next.push_back(std::move(nc));
        }
      }
    }
    states.swap(next);
  }
  return states;
}

ReducedObjective reduced_objective(const NesProblem& problem, const ReductionScheme& scheme,
                                   std::span<const double> core, ObjectiveKind kind) {
  auto candidates = expand_individual(problem, scheme, core);
  const auto& retained = scheme.retained_eqs();
  const auto& eqs = problem.equations();

  ReducedObjective best;
  double best_key = std::numeric_limits<double>::infinity();
  bool have = false;
  std::vector<double> residuals;
  for (auto& cand : candidates) {
    residuals.clear();
    double value = 0.0;
    for (int eq : retained) {
      double r = eqs[eq - 1]->eval(cand.full);
      residuals.push_back(r);
      value += kind == ObjectiveKind::L1 ? std::fabs(r) : r * r;
    }
    // A clamped reduced variable no longer satisfies the equation its
    // relation came from; charging that equation's residual removes the
    // spurious zero-objective points clamping would otherwise create at the
    // bounds. Feasible candidates are unaffected.
    for (int clamped_index : cand.clamped) {
      for (const auto& rv : scheme.reduced_vars()) {
        if (rv.index != clamped_index) continue;
        double r = eqs[rv.eliminated_eq - 1]->eval(cand.full);
        residuals.push_back(r);
        value += kind == ObjectiveKind::L1 ? std::fabs(r) : r * r;
      }
    }
    double key = std::isnan(value) ? std::numeric_limits<double>::infinity() : value;
    bool better = !have || key < best_key ||
                  (key == best_key && cand.feasible && !best.best.feasible);
    if (better) {
      best.value = value;
      best.best = cand;
      best.retained_residuals = residuals;
      best_key = key;
      have = true;
    }
  }
  return best;
}

std::vector<DecisionVector> expand_population(const NesProblem& problem,
                                              const ReductionScheme& scheme,
                                              std::span<const CoreVector> cores) {
  std::vector<DecisionVector> out;
  out.reserve(cores.size());
  for (const auto& c : cores)
    out.push_back(reduced_objective(problem, scheme, c, ObjectiveKind::Sq).best.full);
  return out;
}

}  // namespace nes
