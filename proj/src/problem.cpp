#include "problem.hpp"

#include <cmath>
#include <stdexcept>

namespace nes {

NesProblem::NesProblem(std::string name, std::vector<Bounds> bounds,
                       std::vector<ExprPtr> equations, RootCount nor, long nfes_max)
    : name_(std::move(name)),
      bounds_(std::move(bounds)),
      equations_(std::move(equations)),
      nor_(nor),
      nfes_max_(nfes_max) {
  if (bounds_.empty()) throw std::invalid_argument("problem has no variables");
  if (equations_.empty()) throw std::invalid_argument("problem has no equations");
  for (std::size_t j = 0; j < bounds_.size(); ++j) {
    if (!(bounds_[j].lower < bounds_[j].upper))
      throw std::invalid_argument("bounds of x" + std::to_string(j + 1) +
                                  " are not ordered (lower < upper required)");
  }
  for (const auto& eq : equations_) {
    std::set<int> vars;
    eq->collect_variables(vars);
    for (int v : vars) {
      if (v < 1 || v > var_count())
        throw std::invalid_argument("equation references undeclared variable x" +
                                    std::to_string(v));
    }
  }
}

void NesProblem::check_dimension(std::span<const double> x) const {
  if (x.size() != bounds_.size())
    throw std::invalid_argument("decision vector has dimension " + std::to_string(x.size()) +
                                ", expected " + std::to_string(bounds_.size()));
}

std::vector<double> NesProblem::residuals(std::span<const double> x) const {
  std::vector<double> out(equations_.size());
  residuals_into(x, out);
  return out;
}

void NesProblem::residuals_into(std::span<const double> x, std::span<double> out) const {
  check_dimension(x);
  if (out.size() != equations_.size())
    throw std::invalid_argument("residual buffer has wrong size");
  for (std::size_t i = 0; i < equations_.size(); ++i) out[i] = equations_[i]->eval(x);
}

double NesProblem::residual_l1(std::span<const double> x) const {
  check_dimension(x);
  double acc = 0.0;
  for (const auto& eq : equations_) acc += std::fabs(eq->eval(x));
  return acc;
}

double NesProblem::residual_sq(std::span<const double> x) const {
  check_dimension(x);
  double acc = 0.0;
  for (const auto& eq : equations_) {
    double r = eq->eval(x);
    acc += r * r;
  }
  return acc;
}

bool NesProblem::in_bounds(std::span<const double> x) const {
  check_dimension(x);
  for (std::size_t j = 0; j < bounds_.size(); ++j) {
    if (!(bounds_[j].lower <= x[j] && x[j] <= bounds_[j].upper)) return false;
  }
  return true;
}

bool NesProblem::is_root(std::span<const double> x, double threshold) const {
  return residual_sq(x) < threshold && in_bounds(x);
}

bool NesProblem::operator==(const NesProblem& other) const {
  if (name_ != other.name_ || bounds_ != other.bounds_ || nor_ != other.nor_ ||
      nfes_max_ != other.nfes_max_ || equations_.size() != other.equations_.size() ||
      known_roots_ != other.known_roots_)
    return false;
  for (std::size_t i = 0; i < equations_.size(); ++i)
    if (!structurally_equal(*equations_[i], *other.equations_[i])) return false;
  return true;
}

}  // namespace nes
