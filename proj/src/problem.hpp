#pragma once

// A nonlinear equation system over a box-bounded decision space.
// Immutable after construction; all evaluation is pure.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expr.hpp"

namespace nes {

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
  bool operator==(const Bounds&) const = default;
};

// Known root count of a system.
struct RootCount {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  int count = 0;

  static RootCount finite(int k) { return {Kind::Finite, k}; }
  static RootCount infinite() { return {Kind::Infinite, 0}; }
  static RootCount unknown() { return {Kind::Unknown, 0}; }
  bool is_finite() const { return kind == Kind::Finite; }
  bool operator==(const RootCount&) const = default;
};

using DecisionVector = std::vector<double>;

class NesProblem {
 public:
  NesProblem(std::string name, std::vector<Bounds> bounds, std::vector<ExprPtr> equations,
             RootCount nor = RootCount::unknown(), long nfes_max = 50000);

  const std::string& name() const { return name_; }
  int var_count() const { return static_cast<int>(bounds_.size()); }
  int equation_count() const { return static_cast<int>(equations_.size()); }
  const std::vector<Bounds>& bounds() const { return bounds_; }
  const std::vector<ExprPtr>& equations() const { return equations_; }
  RootCount nor() const { return nor_; }
  long nfes_max() const { return nfes_max_; }

  const std::vector<DecisionVector>& known_roots() const { return known_roots_; }
  void set_known_roots(std::vector<DecisionVector> roots) { known_roots_ = std::move(roots); }

  // Residual vector (f_1(x), ..., f_m(x)). Out-of-bound points are evaluable;
  // feasibility is a separate predicate.
  std::vector<double> residuals(std::span<const double> x) const;
  void residuals_into(std::span<const double> x, std::span<double> out) const;

  double residual_l1(std::span<const double> x) const;
  double residual_sq(std::span<const double> x) const;

  bool in_bounds(std::span<const double> x) const;
  bool is_root(std::span<const double> x, double threshold) const;

  bool operator==(const NesProblem& other) const;

 private:
  void check_dimension(std::span<const double> x) const;

  std::string name_;
  std::vector<Bounds> bounds_;
  std::vector<ExprPtr> equations_;
  RootCount nor_;
  long nfes_max_ = 50000;
  std::vector<DecisionVector> known_roots_;
};

// Residual threshold below which a candidate counts as a root.
inline constexpr double kRootThreshold = 1e-5;

}  // namespace nes
