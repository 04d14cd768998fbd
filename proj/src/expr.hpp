#pragma once

// Arithmetic expression trees for equation residuals and reduction relations.
// Trees are immutable after parsing and safe to share between threads.

#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nes {

enum class UnaryOp { Neg, Abs, Sin, Cos, Tan, Sqrt, Exp, Ln };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Maximum nesting depth of sum(...) constructs.
inline constexpr int kMaxSumDepth = 8;

class Expr {
public:
  enum class Kind { Constant, Variable, SumIndex, IndexedVar, Unary, Binary, Sum };

  static ExprPtr constant(double value);
  static ExprPtr variable(int index1);  // 1-based variable index
  static ExprPtr sum_index(int slot);
  static ExprPtr indexed_var(ExprPtr index);
  static ExprPtr unary(UnaryOp op, ExprPtr child);
  static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr sum(int slot, long from, long to, ExprPtr body);

  Kind kind() const { return kind_; }
  double constant_value() const { return value_; }
  int variable_index() const { return var_; }
  int slot() const { return slot_; }
  long sum_from() const { return from_; }
  long sum_to() const { return to_; }
  UnaryOp unary_op() const { return uop_; }
  BinaryOp binary_op() const { return bop_; }
  const Expr* left() const { return a_.get(); }
  const Expr* right() const { return b_.get(); }

  // IEEE double evaluation; singularities propagate as inf/NaN.
  double eval(std::span<const double> x) const;

  // Exact set of variable indices referenced, with sum ranges expanded.
  void collect_variables(std::set<int>& out) const;
  bool references_variable(int index1) const;

private:
  Kind kind_;
  double value_ = 0.0;
  int var_ = 0;
  int slot_ = 0;
  long from_ = 0, to_ = 0;
  UnaryOp uop_ = UnaryOp::Neg;
  BinaryOp bop_ = BinaryOp::Add;
  int pow_int_exp_ = kNoIntExp;  // set when rhs of Pow is an integral constant
  ExprPtr a_, b_;

  static constexpr int kNoIntExp = INT32_MIN;
  explicit Expr(Kind k) : kind_(k) {}

  struct EvalCtx {
    const double* x;
    std::size_t n;
    double idx[kMaxSumDepth];
  };
  double eval_node(EvalCtx& ctx) const;
  void collect_node(EvalCtx& ctx, std::set<int>& out) const;
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

// A reduction relation right-hand side; one or two candidate expressions.
// Two candidates arise from a single top-level "±" (also accepted as "+-").
struct MultiExpr {
  std::vector<ExprPtr> candidates;
  bool pm_prefix = false;  // printed as "±e" rather than "a ± b"

  void collect_variables(std::set<int>& out) const {
    for (const auto& c : candidates) c->collect_variables(out);
  }
  bool references_variable(int index1) const {
    for (const auto& c : candidates)
      if (c->references_variable(index1)) return true;
    return false;
  }
};

// Parses a single-valued expression; "±" is a syntax error here.
ExprPtr parse_expression(std::string_view text, int var_count);

// Parses a reduction relation; at most one top-level "±".
MultiExpr parse_relation(std::string_view text, int var_count);

std::string to_string(const Expr& e);
std::string to_string(const MultiExpr& e);

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const MultiExpr& a, const MultiExpr& b);

}  // namespace nes
