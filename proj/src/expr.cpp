#include "expr.hpp"

#include <cassert>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <sstream>

namespace nes {

namespace {

double pow_int(double base, int e) {
  if (e < 0) return 1.0 / pow_int(base, -e);
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

ExprPtr Expr::constant(double value) {
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Constant));
  e->value_ = value;
  return e;
}

ExprPtr Expr::variable(int index1) {
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Variable));
  e->var_ = index1;
  return e;
}

ExprPtr Expr::sum_index(int slot) {
  auto e = std::shared_ptr<Expr>(new Expr(Kind::SumIndex));
  e->slot_ = slot;
  return e;
}

ExprPtr Expr::indexed_var(ExprPtr index) {
  auto e = std::shared_ptr<Expr>(new Expr(Kind::IndexedVar));
  e->a_ = std::move(index);
  return e;
}

ExprPtr Expr::unary(UnaryOp op, ExprPtr child) {
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Unary));
  e->uop_ = op;
  e->a_ = std::move(child);
  return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Binary));
  e->bop_ = op;
  if (op == BinaryOp::Pow && rhs->kind() == Kind::Constant) {
    double v = rhs->constant_value();
    if (v == std::floor(v) && std::abs(v) <= 64.0) e->pow_int_exp_ = static_cast<int>(v);
  }
  e->a_ = std::move(lhs);
  e->b_ = std::move(rhs);
  return e;
}

ExprPtr Expr::sum(int slot, long from, long to, ExprPtr body) {
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Sum));
  e->slot_ = slot;
  e->from_ = from;
  e->to_ = to;
  e->a_ = std::move(body);
  return e;
}

double Expr::eval(std::span<const double> x) const {
  EvalCtx ctx{x.data(), x.size(), {}};
  return eval_node(ctx);
}

double Expr::eval_node(EvalCtx& ctx) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Variable:
      assert(var_ >= 1 && static_cast<std::size_t>(var_) <= ctx.n);
      return ctx.x[var_ - 1];
    case Kind::SumIndex:
      return ctx.idx[slot_];
    case Kind::IndexedVar: {
      double iv = a_->eval_node(ctx);
      long i = std::lround(iv);
      assert(i >= 1 && static_cast<std::size_t>(i) <= ctx.n);
      return ctx.x[i - 1];
    }
    case Kind::Unary: {
      double v = a_->eval_node(ctx);
      switch (uop_) {
        case UnaryOp::Neg: return -v;
        case UnaryOp::Abs: return std::fabs(v);
        case UnaryOp::Sin: return std::sin(v);
        case UnaryOp::Cos: return std::cos(v);
        case UnaryOp::Tan: return std::tan(v);
        case UnaryOp::Sqrt: return std::sqrt(v);
        case UnaryOp::Exp: return std::exp(v);
        case UnaryOp::Ln: return std::log(v);
      }
      return std::numeric_limits<double>::quiet_NaN();
    }
    case Kind::Binary: {
      double l = a_->eval_node(ctx);
      switch (bop_) {
        case BinaryOp::Add: return l + b_->eval_node(ctx);
        case BinaryOp::Sub: return l - b_->eval_node(ctx);
        case BinaryOp::Mul: return l * b_->eval_node(ctx);
        case BinaryOp::Div: return l / b_->eval_node(ctx);
        case BinaryOp::Pow:
          // Integral constant exponents use repeated multiplication so that
          // negative bases raised to integer powers evaluate exactly.
          if (pow_int_exp_ != kNoIntExp) return pow_int(l, pow_int_exp_);
          return std::pow(l, b_->eval_node(ctx));
      }
      return std::numeric_limits<double>::quiet_NaN();
    }
    case Kind::Sum: {
      double acc = 0.0;
      for (long i = from_; i <= to_; ++i) {
        ctx.idx[slot_] = static_cast<double>(i);
        acc += a_->eval_node(ctx);
      }
      return acc;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void Expr::collect_variables(std::set<int>& out) const {
  EvalCtx ctx{nullptr, 0, {}};
  collect_node(ctx, out);
}

void Expr::collect_node(EvalCtx& ctx, std::set<int>& out) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::SumIndex:
      return;
    case Kind::Variable:
      out.insert(var_);
      return;
    case Kind::IndexedVar: {
      double iv = a_->eval_node(ctx);
      out.insert(static_cast<int>(std::lround(iv)));
      return;
    }
    case Kind::Unary:
      a_->collect_node(ctx, out);
      return;
    case Kind::Binary:
      a_->collect_node(ctx, out);
      b_->collect_node(ctx, out);
      return;
    case Kind::Sum:
      for (long i = from_; i <= to_; ++i) {
        ctx.idx[slot_] = static_cast<double>(i);
        a_->collect_node(ctx, out);
      }
      return;
  }
}

bool Expr::references_variable(int index1) const {
  std::set<int> vars;
  collect_variables(vars);
  return vars.count(index1) > 0;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Num, Ident, Plus, Minus, Star, Slash, Caret,
  LParen, RParen, Comma, Assign, Range, Pm, End
};

struct Token {
  Tok t;
  double num = 0.0;
  std::string_view text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok t, std::size_t pos, std::string_view text = {}) {
    out.push_back(Token{t, 0.0, text, pos});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    // UTF-8 "±"
    if (static_cast<unsigned char>(c) == 0xC2 && i + 1 < s.size() &&
        static_cast<unsigned char>(s[i + 1]) == 0xB1) {
      push(Tok::Pm, i);
      i += 2;
      continue;
    }
    if (c == '+' && i + 1 < s.size() && s[i + 1] == '-') {
      push(Tok::Pm, i);
      i += 2;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.' &&
          !(i + 1 < s.size() && s[i + 1] == '.')) {  // "1..5" is a range, not "1."
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t save = i;
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        } else {
          i = save;  // "e" belongs to an identifier, not this number
        }
      }
      Token tk{Tok::Num, 0.0, s.substr(start, i - start), start};
      tk.num = std::strtod(std::string(tk.text).c_str(), nullptr);
      out.push_back(tk);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      push(Tok::Ident, start, s.substr(start, i - start));
      continue;
    }
    switch (c) {
      case '+': push(Tok::Plus, i); ++i; break;
      case '-': push(Tok::Minus, i); ++i; break;
      case '*': push(Tok::Star, i); ++i; break;
      case '/': push(Tok::Slash, i); ++i; break;
      case '^': push(Tok::Caret, i); ++i; break;
      case '(': push(Tok::LParen, i); ++i; break;
      case ')': push(Tok::RParen, i); ++i; break;
      case ',': push(Tok::Comma, i); ++i; break;
      case '=': push(Tok::Assign, i); ++i; break;
      case '.':
        if (i + 1 < s.size() && s[i + 1] == '.') {
          push(Tok::Range, i);
          i += 2;
          break;
        }
        throw ParseError("stray '.'", i);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back(Token{Tok::End, 0.0, {}, s.size()});
  return out;
}

bool is_function_name(std::string_view s) {
  return s == "abs" || s == "sin" || s == "cos" || s == "tan" ||
         s == "sqrt" || s == "exp" || s == "ln";
}

UnaryOp function_op(std::string_view s) {
  if (s == "abs") return UnaryOp::Abs;
  if (s == "sin") return UnaryOp::Sin;
  if (s == "cos") return UnaryOp::Cos;
  if (s == "tan") return UnaryOp::Tan;
  if (s == "sqrt") return UnaryOp::Sqrt;
  if (s == "exp") return UnaryOp::Exp;
  return UnaryOp::Ln;
}

// True for "x" followed by only digits, e.g. "x12".
bool is_plain_variable(std::string_view s, int& index_out) {
  if (s.size() < 2 || s[0] != 'x') return false;
  int idx = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    idx = idx * 10 + (s[i] - '0');
    if (idx > 1000000) return false;
  }
  index_out = idx;
  return true;
}

class Parser {
 public:
  Parser(std::span<const Token> toks, int var_count)
      : toks_(toks), var_count_(var_count) {}

  ExprPtr parse_full() {
    ExprPtr e = parse_add();
    expect(Tok::End, "trailing input");
    return e;
  }

 private:
  std::span<const Token> toks_;
  std::size_t i_ = 0;
  int var_count_;
  std::vector<std::string_view> sum_names_;
  bool in_index_ = false;

  const Token& cur() const { return toks_[i_]; }
  void advance() { ++i_; }
  bool accept(Tok t) {
    if (cur().t == t) { advance(); return true; }
    return false;
  }
  void expect(Tok t, const char* what) {
    if (!accept(t)) throw ParseError(std::string("expected ") + what, cur().pos);
  }

  ExprPtr parse_add() {
    ExprPtr lhs = parse_mul();
    for (;;) {
      if (accept(Tok::Plus)) lhs = Expr::binary(BinaryOp::Add, lhs, parse_mul());
      else if (accept(Tok::Minus)) lhs = Expr::binary(BinaryOp::Sub, lhs, parse_mul());
      else return lhs;
    }
  }

  ExprPtr parse_mul() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (accept(Tok::Star)) lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
      else if (accept(Tok::Slash)) lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
      else return lhs;
    }
  }

  ExprPtr parse_unary() {
    if (accept(Tok::Plus)) return parse_unary();
    if (cur().t == Tok::Minus) {
      advance();
      ExprPtr child = parse_unary();
      if (child->kind() == Expr::Kind::Constant)
        return Expr::constant(-child->constant_value());
      return Expr::unary(UnaryOp::Neg, child);
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept(Tok::Caret)) {
      // Right-associative; exponent may carry its own sign.
      return Expr::binary(BinaryOp::Pow, base, parse_unary());
    }
    return base;
  }

  ExprPtr parse_atom() {
    const Token& t = cur();
    switch (t.t) {
      case Tok::Num:
        advance();
        return Expr::constant(t.num);
      case Tok::LParen: {
        advance();
        ExprPtr e = parse_add();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident:
        return parse_ident();
      case Tok::Pm:
        throw ParseError("'±' is only allowed once at the top level of a reduction relation",
                         t.pos);
      default:
        throw ParseError("expected a number, variable, function or '('", t.pos);
    }
  }

  ExprPtr parse_ident() {
    const Token t = cur();
    advance();
    std::string_view name = t.text;

    // Active sum index?
    for (std::size_t k = sum_names_.size(); k-- > 0;) {
      if (sum_names_[k] == name) return Expr::sum_index(static_cast<int>(k));
    }

    if (name == "pi") return Expr::constant(M_PI);

    if (name == "sum") {
      if (in_index_)
        throw ParseError("sum(...) is not allowed inside a variable index", t.pos);
      return parse_sum(t.pos);
    }

    if (name == "x" && cur().t == Tok::LParen) {
      advance();
      bool saved = in_index_;
      in_index_ = true;
      ExprPtr idx = parse_add();
      in_index_ = saved;
      expect(Tok::RParen, "')'");
      return Expr::indexed_var(idx);
    }

    int vidx = 0;
    if (is_plain_variable(name, vidx)) {
      if (in_index_)
        throw ParseError("only sum indices and constants may appear in a variable index", t.pos);
      if (vidx < 1 || vidx > var_count_)
        throw ParseError("variable " + std::string(name) + " is out of range (problem has " +
                             std::to_string(var_count_) + " variables)",
                         t.pos);
      return Expr::variable(vidx);
    }

    if (is_function_name(name)) {
      expect(Tok::LParen, "'(' after function name");
      ExprPtr arg = parse_add();
      expect(Tok::RParen, "')'");
      return Expr::unary(function_op(name), arg);
    }

    throw ParseError("unknown identifier '" + std::string(name) + "'", t.pos);
  }

  long parse_int_literal() {
    bool neg = accept(Tok::Minus);
    const Token& t = cur();
    if (t.t != Tok::Num || t.num != std::floor(t.num))
      throw ParseError("expected an integer", t.pos);
    advance();
    long v = static_cast<long>(t.num);
    return neg ? -v : v;
  }

  ExprPtr parse_sum(std::size_t pos) {
    if (sum_names_.size() >= static_cast<std::size_t>(kMaxSumDepth))
      throw ParseError("sum nesting too deep", pos);
    expect(Tok::LParen, "'(' after sum");
    const Token& nt = cur();
    if (nt.t != Tok::Ident) throw ParseError("expected sum index name", nt.pos);
    std::string_view name = nt.text;
    int dummy = 0;
    if (name == "pi" || name == "sum" || is_function_name(name) || is_plain_variable(name, dummy))
      throw ParseError("'" + std::string(name) + "' cannot be used as a sum index", nt.pos);
    for (const auto& n : sum_names_)
      if (n == name) throw ParseError("sum index '" + std::string(name) + "' shadows an outer index", nt.pos);
    advance();
    expect(Tok::Assign, "'='");
    long from = parse_int_literal();
    expect(Tok::Range, "'..'");
    long to = parse_int_literal();
    expect(Tok::Comma, "','");
    int slot = static_cast<int>(sum_names_.size());
    sum_names_.push_back(name);
    ExprPtr body = parse_add();
    sum_names_.pop_back();
    expect(Tok::RParen, "')'");
    return Expr::sum(slot, from, to, body);
  }
};

// Enumerates every concrete variable reference and validates the index range.
void validate_references(const Expr& e, int var_count) {
  std::set<int> vars;
  e.collect_variables(vars);
  for (int v : vars) {
    if (v < 1 || v > var_count)
      throw ParseError("variable index " + std::to_string(v) + " is out of range (problem has " +
                           std::to_string(var_count) + " variables)",
                       0);
  }
}

ExprPtr parse_tokens(std::span<const Token> toks, int var_count) {
  Parser p(toks, var_count);
  ExprPtr e = p.parse_full();
  validate_references(*e, var_count);
  return e;
}

}  // namespace

ExprPtr parse_expression(std::string_view text, int var_count) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError("empty expression", 0);
  return parse_tokens(tokenize(text), var_count);
}

MultiExpr parse_relation(std::string_view text, int var_count) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError("empty relation", 0);
  std::vector<Token> toks = tokenize(text);

  int depth = 0;
  std::ptrdiff_t pm_at = -1;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    if (toks[k].t == Tok::LParen) ++depth;
    else if (toks[k].t == Tok::RParen) --depth;
    else if (toks[k].t == Tok::Pm) {
      if (depth > 0)
        throw ParseError("'±' must appear at the top level of the relation", toks[k].pos);
      if (pm_at >= 0)
        throw ParseError("only one '±' is allowed in a relation", toks[k].pos);
      pm_at = static_cast<std::ptrdiff_t>(k);
    }
  }

  MultiExpr out;
  if (pm_at < 0) {
    out.candidates.push_back(parse_tokens(toks, var_count));
    return out;
  }
  if (pm_at == 0) {
    std::vector<Token> rest(toks.begin() + 1, toks.end());
    ExprPtr e = parse_tokens(rest, var_count);
    out.pm_prefix = true;
    out.candidates.push_back(e);
    out.candidates.push_back(e->kind() == Expr::Kind::Constant
                                 ? Expr::constant(-e->constant_value())
                                 : Expr::unary(UnaryOp::Neg, e));
    return out;
  }
  std::vector<Token> plus_toks = toks;
  plus_toks[pm_at].t = Tok::Plus;
  std::vector<Token> minus_toks = toks;
  minus_toks[pm_at].t = Tok::Minus;
  out.candidates.push_back(parse_tokens(plus_toks, var_count));
  out.candidates.push_back(parse_tokens(minus_toks, var_count));
  return out;
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kSumNames[kMaxSumDepth] = {"i", "j", "k", "l", "p", "q", "r", "s"};

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
      }
      return 5;
    case Expr::Kind::Unary:
      return e.unary_op() == UnaryOp::Neg ? 3 : 5;
    default:
      return 5;
  }
}

void format_double(std::ostringstream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

void print_node(const Expr& e, std::ostringstream& os);

void print_child(const Expr& c, std::ostringstream& os, bool parens) {
  if (parens) os << '(';
  print_node(c, os);
  if (parens) os << ')';
}

void print_node(const Expr& e, std::ostringstream& os) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      format_double(os, e.constant_value());
      return;
    case Expr::Kind::Variable:
      os << 'x' << e.variable_index();
      return;
    case Expr::Kind::SumIndex:
      os << kSumNames[e.slot()];
      return;
    case Expr::Kind::IndexedVar:
      os << "x(";
      print_node(*e.left(), os);
      os << ')';
      return;
    case Expr::Kind::Unary: {
      const Expr& c = *e.left();
      if (e.unary_op() == UnaryOp::Neg) {
        os << '-';
        print_child(c, os, precedence(c) < 3);
        return;
      }
      const char* name = "";
      switch (e.unary_op()) {
        case UnaryOp::Abs: name = "abs"; break;
        case UnaryOp::Sin: name = "sin"; break;
        case UnaryOp::Cos: name = "cos"; break;
        case UnaryOp::Tan: name = "tan"; break;
        case UnaryOp::Sqrt: name = "sqrt"; break;
        case UnaryOp::Exp: name = "exp"; break;
        case UnaryOp::Ln: name = "ln"; break;
        case UnaryOp::Neg: break;
      }
      os << name << '(';
      print_node(c, os);
      os << ')';
      return;
    }
    case Expr::Kind::Binary: {
      const Expr& l = *e.left();
      const Expr& r = *e.right();
      int p = precedence(e);
      switch (e.binary_op()) {
        case BinaryOp::Add:
          print_child(l, os, precedence(l) < p);
          os << " + ";
          print_child(r, os, precedence(r) <= p);
          return;
        case BinaryOp::Sub:
          print_child(l, os, precedence(l) < p);
          os << " - ";
          print_child(r, os, precedence(r) <= p);
          return;
        case BinaryOp::Mul:
          print_child(l, os, precedence(l) < p);
          os << '*';
          print_child(r, os, precedence(r) <= p);
          return;
        case BinaryOp::Div:
          print_child(l, os, precedence(l) < p);
          os << '/';
          print_child(r, os, precedence(r) <= p);
          return;
        case BinaryOp::Pow:
          print_child(l, os, precedence(l) <= p);
          os << '^';
          print_child(r, os, precedence(r) < 3);
          return;
      }
      return;
    }
    case Expr::Kind::Sum:
      os << "sum(" << kSumNames[e.slot()] << '=' << e.sum_from() << ".." << e.sum_to() << ", ";
      print_node(*e.left(), os);
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print_node(e, os);
  return os.str();
}

std::string to_string(const MultiExpr& m) {
  if (m.candidates.size() == 1) return to_string(*m.candidates[0]);
  if (m.pm_prefix) {
    const Expr& base = *m.candidates[0];
    std::ostringstream os;
    os << "±";
    print_child(base, os, precedence(base) < 3);
    return os.str();
  }
  // Infix form: both candidates are Add/Sub with identical operands.
  const Expr& plus = *m.candidates[0];
  std::ostringstream os;
  print_child(*plus.left(), os, precedence(*plus.left()) < 1);
  os << " ± ";
  print_child(*plus.right(), os, precedence(*plus.right()) <= 1);
  return os.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Constant:
      return a.constant_value() == b.constant_value();
    case Expr::Kind::Variable:
      return a.variable_index() == b.variable_index();
    case Expr::Kind::SumIndex:
      return a.slot() == b.slot();
    case Expr::Kind::IndexedVar:
      return structurally_equal(*a.left(), *b.left());
    case Expr::Kind::Unary:
      return a.unary_op() == b.unary_op() && structurally_equal(*a.left(), *b.left());
    case Expr::Kind::Binary:
      return a.binary_op() == b.binary_op() && structurally_equal(*a.left(), *b.left()) &&
             structurally_equal(*a.right(), *b.right());
    case Expr::Kind::Sum:
      return a.slot() == b.slot() && a.sum_from() == b.sum_from() && a.sum_to() == b.sum_to() &&
             structurally_equal(*a.left(), *b.left());
  }
  return false;
}

bool structurally_equal(const MultiExpr& a, const MultiExpr& b) {
  if (a.candidates.size() != b.candidates.size()) return false;
  for (std::size_t i = 0; i < a.candidates.size(); ++i)
    if (!structurally_equal(*a.candidates[i], *b.candidates[i])) return false;
  return true;
}

}  // namespace nes
