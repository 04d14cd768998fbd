#include "nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "jade.hpp"  // objective_key, reflect helpers
#include "rng.hpp"

namespace nes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::array<double, 2> keyed(const std::array<double, 2>& v) {
  return {objective_key(v[0]), objective_key(v[1])};
}

// a dominates b (minimization, both objectives).
bool dominates(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  auto ka = keyed(a), kb = keyed(b);
  return ka[0] <= kb[0] && ka[1] <= kb[1] && (ka[0] < kb[0] || ka[1] < kb[1]);
}

std::vector<double> crowding_distances(const std::vector<std::array<double, 2>>& objs,
                                       const std::vector<int>& front) {
  std::vector<double> dist(objs.size(), 0.0);
  if (front.size() <= 2) {
    for (int i : front) dist[i] = kInf;
    return dist;
  }
  for (int obj = 0; obj < 2; ++obj) {
    std::vector<int> order = front;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return objective_key(objs[a][obj]) < objective_key(objs[b][obj]);
    });
    double lo = objective_key(objs[order.front()][obj]);
    double hi = objective_key(objs[order.back()][obj]);
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    if (hi > lo && std::isfinite(hi - lo)) {
      for (std::size_t k = 1; k + 1 < order.size(); ++k)
        dist[order[k]] += (objective_key(objs[order[k + 1]][obj]) -
                           objective_key(objs[order[k - 1]][obj])) /
                          (hi - lo);
    }
  }
  return dist;
}

struct SortedFronts {
  std::vector<std::vector<int>> fronts;
  std::vector<int> rank;
};

SortedFronts sort_fronts(const std::vector<std::array<double, 2>>& objs) {
  const int n = static_cast<int>(objs.size());
  std::vector<std::vector<int>> dominated(n);
  std::vector<int> dom_count(n, 0);
  SortedFronts out;
  out.rank.assign(n, 0);

  std::vector<int> current;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(objs[p], objs[q])) dominated[p].push_back(q);
      else if (dominates(objs[q], objs[p])) ++dom_count[p];
    }
    if (dom_count[p] == 0) {
      out.rank[p] = 0;
      current.push_back(p);
    }
  }
  int level = 0;
  while (!current.empty()) {
    out.fronts.push_back(current);
    std::vector<int> next;
    for (int p : current) {
      for (int q : dominated[p]) {
        if (--dom_count[q] == 0) {
          out.rank[q] = level + 1;
          next.push_back(q);
        }
      }
    }
    ++level;
    current = std::move(next);
  }
  return out;
}

class Nsga2 {
 public:
  Nsga2(const BiObjective& objective, const std::vector<Bounds>& bounds, GaParams params,
        std::uint64_t seed)
      : objective_(objective), bounds_(bounds), params_(params), rng_(seed) {
    if (params_.np < 4 || params_.np % 2 != 0)
      throw std::invalid_argument("population size must be even and at least 4");
    if (params_.mutation_prob < 0.0) params_.mutation_prob = 1.0 / bounds_.size();
  }

  Nsga2Result run(int max_generations, const GenerationHook& hook) {
    const int np = params_.np;
    const std::size_t dim = bounds_.size();
    pop_.assign(np, DecisionVector(dim));
    objs_.assign(np, {});
    for (int i = 0; i < np; ++i) {
      for (std::size_t j = 0; j < dim; ++j)
        pop_[i][j] = rng_.uniform(bounds_[j].lower, bounds_[j].upper);
      objs_[i] = objective_(pop_[i]);
      ++evaluations_;
    }
    if (hook) hook(0, pop_, objs_);

    for (int gen = 1; gen <= max_generations; ++gen) {
      auto sorted = sort_fronts(objs_);
      std::vector<double> crowd(np, 0.0);
      for (const auto& front : sorted.fronts) {
        auto d = crowding_distances(objs_, front);
        for (int i : front) crowd[i] = d[i];
      }

      // Parents come from shuffled pairings so every individual enters the
      // tournament exactly twice per sweep.
      std::vector<DecisionVector> children;
      children.reserve(np);
      std::vector<int> order;
      std::size_t cursor = 0;
      auto next_parent = [&] {
        if (cursor + 2 > order.size()) {
          order.resize(np);
          std::iota(order.begin(), order.end(), 0);
          for (int i = np - 1; i > 0; --i) std::swap(order[i], order[rng_.uniform_int(i + 1)]);
          cursor = 0;
        }
        int a = order[cursor];
        int b = order[cursor + 1];
        cursor += 2;
        return tournament_pick(a, b, sorted.rank, crowd);
      };
      while (static_cast<int>(children.size()) < np) {
        int a = next_parent();
        int b = next_parent();
        auto [c1, c2] = sbx(pop_[a], pop_[b]);
        mutate(c1);
        mutate(c2);
        children.push_back(std::move(c1));
        children.push_back(std::move(c2));
      }

      std::vector<std::array<double, 2>> child_objs(np);
      for (int i = 0; i < np; ++i) {
        child_objs[i] = objective_(children[i]);
        ++evaluations_;
      }

      // (mu + lambda) survival with crowding truncation on the split front.
      std::vector<DecisionVector> merged = pop_;
      merged.insert(merged.end(), children.begin(), children.end());
      std::vector<std::array<double, 2>> merged_objs = objs_;
      merged_objs.insert(merged_objs.end(), child_objs.begin(), child_objs.end());

      auto msorted = sort_fronts(merged_objs);
      std::vector<DecisionVector> next_pop;
      std::vector<std::array<double, 2>> next_objs;
      next_pop.reserve(np);
      for (const auto& front : msorted.fronts) {
        if (static_cast<int>(next_pop.size()) + static_cast<int>(front.size()) <= np) {
          for (int i : front) {
            next_pop.push_back(merged[i]);
            next_objs.push_back(merged_objs[i]);
          }
        } else {
          auto d = crowding_distances(merged_objs, front);
          std::vector<int> order = front;
          std::stable_sort(order.begin(), order.end(),
                           [&](int x, int y) { return d[x] > d[y]; });
          for (int i : order) {
            if (static_cast<int>(next_pop.size()) == np) break;
            next_pop.push_back(merged[i]);
            next_objs.push_back(merged_objs[i]);
          }
          break;
        }
        if (static_cast<int>(next_pop.size()) == np) break;
      }
      pop_ = std::move(next_pop);
      objs_ = std::move(next_objs);
      if (hook) hook(gen, pop_, objs_);
    }

    return Nsga2Result{std::move(pop_), std::move(objs_), evaluations_};
  }

 private:
  static int tournament_pick(int a, int b, const std::vector<int>& rank,
                             const std::vector<double>& crowd) {
    if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
    if (crowd[a] != crowd[b]) return crowd[a] > crowd[b] ? a : b;
    return a;
  }

  std::pair<DecisionVector, DecisionVector> sbx(const DecisionVector& p1,
                                                const DecisionVector& p2) {
    DecisionVector c1 = p1, c2 = p2;
    if (rng_.uniform01() > params_.crossover_prob) return {c1, c2};
    const double eta = params_.crossover_eta;
    for (std::size_t j = 0; j < c1.size(); ++j) {
      if (rng_.uniform01() > 0.5) continue;
      double y1 = std::min(p1[j], p2[j]);
      double y2 = std::max(p1[j], p2[j]);
      if (y2 - y1 < 1e-14) continue;
      double yl = bounds_[j].lower, yu = bounds_[j].upper;
      double u = rng_.uniform01();

      double beta = 1.0 + 2.0 * (y1 - yl) / (y2 - y1);
      double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
      double betaq = u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                                      : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
      double v1 = 0.5 * ((y1 + y2) - betaq * (y2 - y1));

      beta = 1.0 + 2.0 * (yu - y2) / (y2 - y1);
      alpha = 2.0 - std::pow(beta, -(eta + 1.0));
      betaq = u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                               : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
      double v2 = 0.5 * ((y1 + y2) + betaq * (y2 - y1));

      v1 = std::clamp(v1, yl, yu);
      v2 = std::clamp(v2, yl, yu);
      if (rng_.uniform01() <= 0.5) std::swap(v1, v2);
      c1[j] = v1;
      c2[j] = v2;
    }
    return {c1, c2};
  }

  void mutate(DecisionVector& x) {
    const double eta = params_.mutation_eta;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (rng_.uniform01() > params_.mutation_prob) continue;
      double y = x[j], yl = bounds_[j].lower, yu = bounds_[j].upper;
      double delta1 = (y - yl) / (yu - yl);
      double delta2 = (yu - y) / (yu - yl);
      double u = rng_.uniform01();
      double mut_pow = 1.0 / (eta + 1.0);
      double deltaq;
      if (u <= 0.5) {
        double xy = 1.0 - delta1;
        double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
        deltaq = std::pow(val, mut_pow) - 1.0;
      } else {
        double xy = 1.0 - delta2;
        double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
        deltaq = 1.0 - std::pow(val, mut_pow);
      }
      x[j] = std::clamp(y + deltaq * (yu - yl), yl, yu);
    }
  }

  const BiObjective& objective_;
  const std::vector<Bounds>& bounds_;
  GaParams params_;
  Rng rng_;
  std::vector<DecisionVector> pop_;
  std::vector<std::array<double, 2>> objs_;
  long evaluations_ = 0;
};

}  // namespace

std::vector<int> nondominated_ranks(const std::vector<std::array<double, 2>>& objectives) {
  return sort_fronts(objectives).rank;
}

Nsga2Result nsga2_run(const BiObjective& objective, const std::vector<Bounds>& bounds,
                      const GaParams& params, int max_generations, std::uint64_t seed,
                      const GenerationHook& hook) {
  if (max_generations < 1) throw std::invalid_argument("max_generations must be >= 1");
  Nsga2 engine(objective, bounds, params, seed);
  return engine.run(max_generations, hook);
}

}  // namespace nes
