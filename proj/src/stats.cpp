#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace nes {

namespace {

// Average ranks (1-based) of |values|, ties shared.
std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = 0.5 * static_cast<double>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 5) throw std::invalid_argument("wilcoxon needs at least 5 pairs");

  std::vector<double> abs_d;
  std::vector<bool> positive;  // d = b - a > 0, i.e. a beats b under minimization
  for (const auto& [a, b] : pairs) {
    double d = b - a;
    if (d == 0.0) continue;
    abs_d.push_back(std::fabs(d));
    positive.push_back(d > 0.0);
  }
  if (abs_d.empty()) throw std::invalid_argument("all differences are zero");

  const std::size_t n = abs_d.size();
  std::vector<double> ranks = average_ranks(abs_d);

  WilcoxonResult res;
  res.n_used = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i)
    (positive[i] ? res.r_plus : res.r_minus) += ranks[i];

  double w = std::min(res.r_plus, res.r_minus);
  if (n <= 25) {
    // Exact distribution of W+ over all 2^n sign assignments, on ranks
    // scaled by 2 so tied half-ranks stay integral.
    std::vector<long> scaled(n);
    long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = std::lround(2.0 * ranks[i]);
      total += scaled[i];
    }
    std::vector<std::uint64_t> count(total + 1, 0);
    count[0] = 1;
    for (long r : scaled) {
      for (long s = total; s >= r; --s) count[s] += count[s - r];
    }
    long w_scaled = std::lround(2.0 * w);
    std::uint64_t acc = 0;
    for (long s = 0; s <= w_scaled && s <= total; ++s) acc += count[s];
    double p = 2.0 * static_cast<double>(acc) / std::ldexp(1.0, static_cast<int>(n));
    res.p_value = std::min(1.0, p);
  } else {
    double nn = static_cast<double>(n);
    double mu = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    // Tie correction.
    std::size_t i = 0;
    std::vector<double> sorted = abs_d;
    std::sort(sorted.begin(), sorted.end());
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
      double t = static_cast<double>(j - i + 1);
      var -= (t * t * t - t) / 48.0;
      i = j + 1;
    }
    double z = (w + 0.5 - mu) / std::sqrt(var);
    res.p_value = std::min(1.0, 2.0 * normal_cdf(z));
  }
  return res;
}

std::vector<double> friedman_ranks(const std::vector<std::vector<double>>& scores,
                                   bool minimize) {
  if (scores.size() < 2) throw std::invalid_argument("friedman needs at least 2 problems");
  const std::size_t algos = scores.front().size();
  if (algos < 2) throw std::invalid_argument("friedman needs at least 2 algorithms");

  std::vector<double> sums(algos, 0.0);
  for (const auto& row : scores) {
    if (row.size() != algos) throw std::invalid_argument("ragged score matrix");
    std::vector<double> keyed = row;
    if (!minimize)
      for (double& v : keyed) v = -v;
    std::vector<double> ranks = average_ranks(keyed);
    for (std::size_t a = 0; a < algos; ++a) sums[a] += ranks[a];
  }
  for (double& s : sums) s /= static_cast<double>(scores.size());
  return sums;
}

}  // namespace nes
