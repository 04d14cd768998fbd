#include "root_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nes_oracle {

namespace {

double residual_sq(const OracleProblem& p, const std::vector<double>& x,
                   std::vector<double>& scratch) {
  p.residuals(x.data(), scratch.data());
  double acc = 0.0;
  for (double r : scratch) acc += r * r;
  return acc;
}

// Gaussian elimination with partial pivoting; false on (near-)singular J.
bool solve_linear(std::vector<double>& a, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
    if (std::fabs(a[pivot * n + col]) < 1e-14) return false;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      std::swap(b[pivot], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * b[c];
    b[r] = s / a[r * n + r];
  }
  return true;
}

// Damped Newton from x0; true when converged to the residual target.
bool newton_polish(const OracleProblem& p, std::vector<double>& x,
                   const OracleSettings& settings) {
  const int n = p.n;
  std::vector<double> f(n), fp(n), fm(n), jac(n * n), step(n), trial(n);
  std::vector<double> scratch(n);

  double current = residual_sq(p, x, scratch);
  for (int iter = 0; iter < settings.max_newton_iters; ++iter) {
    if (current < settings.target_residual_sq) return true;
    p.residuals(x.data(), f.data());

    for (int j = 0; j < n; ++j) {
      double h = 1e-7 * std::max(1.0, std::fabs(x[j]));
      double saved = x[j];
      x[j] = saved + h;
      p.residuals(x.data(), fp.data());
      x[j] = saved - h;
      p.residuals(x.data(), fm.data());
      x[j] = saved;
      for (int i = 0; i < n; ++i) jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * h);
    }

    std::vector<double> a = jac;
    step = f;
    if (!solve_linear(a, step, n)) return false;

    double damp = 1.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      for (int j = 0; j < n; ++j) trial[j] = x[j] - damp * step[j];
      double value = residual_sq(p, trial, scratch);
      if (std::isfinite(value) && value < current) {
        x = trial;
        current = value;
        improved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!improved) return current < settings.target_residual_sq;
  }
  return current < settings.target_residual_sq;
}

}  // namespace

std::vector<std::vector<double>> find_roots(const OracleProblem& problem,
                                            const OracleSettings& settings) {
  const int n = problem.n;
  if (n < 1 || n > 3) throw std::invalid_argument("grid oracle supports 1 to 3 variables");

  std::vector<std::vector<double>> roots;
  std::vector<double> scratch(n);
  auto consider = [&](std::vector<double> start) {
    if (!newton_polish(problem, start, settings)) return;
    for (int j = 0; j < n; ++j)
      if (start[j] < problem.lower[j] || start[j] > problem.upper[j]) return;
    for (const auto& r : roots) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += (r[j] - start[j]) * (r[j] - start[j]);
      if (std::sqrt(acc) < settings.dedup_radius) return;
    }
    roots.push_back(std::move(start));
  };

  const int g = settings.grid;
  std::vector<double> x(n);
  std::vector<int> idx(n, 0);
  for (;;) {
    for (int j = 0; j < n; ++j)
      x[j] = problem.lower[j] +
             (problem.upper[j] - problem.lower[j]) * (idx[j] + 0.5) / static_cast<double>(g);
    consider(x);
    int j = 0;
    while (j < n && ++idx[j] == g) idx[j++] = 0;
    if (j == n) break;
  }

  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace nes_oracle
