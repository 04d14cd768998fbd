#include "problem_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

namespace nes {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, 0);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// key=value pairs separated by whitespace.
std::map<std::string, std::string> parse_kv(std::string_view s, int line) {
  std::map<std::string, std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.size())
      fail(line, "expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq);
    if (out.count(key)) fail(line, "duplicate key '" + key + "'");
    out[key] = tok.substr(eq + 1);
  }
  return out;
}

double parse_number(std::string_view s, int line) {
  std::string str{strip(s)};
  char* end = nullptr;
  double v = std::strtod(str.c_str(), &end);
  if (end != str.c_str() + str.size() || str.empty()) fail(line, "bad number '" + str + "'");
  return v;
}

long parse_integer(std::string_view s, int line) {
  double v = parse_number(s, line);
  if (v != std::floor(v)) fail(line, "expected an integer, got '" + std::string(strip(s)) + "'");
  return static_cast<long>(v);
}

int parse_var_name(std::string_view s, int n, int line) {
  s = strip(s);
  if (s.size() < 2 || s[0] != 'x') fail(line, "expected a variable name like x3, got '" + std::string(s) + "'");
  int idx = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      fail(line, "expected a variable name like x3, got '" + std::string(s) + "'");
    idx = idx * 10 + (s[i] - '0');
  }
  if (idx < 1 || idx > n) fail(line, "variable " + std::string(s) + " is out of range");
  return idx;
}

// "x1 in [-1,1]" or "x1..x20 in [-1,1]"
void parse_bound_entry(std::string_view entry, int n, std::vector<std::optional<Bounds>>& bounds,
                       int line) {
  entry = strip(entry);
  if (entry.empty()) return;
  auto in_pos = entry.find(" in ");
  if (in_pos == std::string_view::npos) fail(line, "bound entry missing 'in': '" + std::string(entry) + "'");
  std::string_view vars = strip(entry.substr(0, in_pos));
  std::string_view range = strip(entry.substr(in_pos + 4));
  if (range.size() < 2 || range.front() != '[' || range.back() != ']')
    fail(line, "bound range must look like [lo, hi]");
  auto parts = split(range.substr(1, range.size() - 2), ',');
  if (parts.size() != 2) fail(line, "bound range must have two values");
  Bounds b{parse_number(parts[0], line), parse_number(parts[1], line)};
  if (!(b.lower < b.upper))
    fail(line, "bound ordering violation: lower must be < upper in '" + std::string(entry) + "'");

  int first, last;
  auto dots = vars.find("..");
  if (dots == std::string_view::npos) {
    first = last = parse_var_name(vars, n, line);
  } else {
    first = parse_var_name(vars.substr(0, dots), n, line);
    last = parse_var_name(vars.substr(dots + 2), n, line);
    if (first > last) fail(line, "bound range runs backwards");
  }
  for (int v = first; v <= last; ++v) {
    if (bounds[v - 1]) fail(line, "duplicate bounds for x" + std::to_string(v));
    bounds[v - 1] = b;
  }
}

}  // namespace

ParsedProblemFile parse_problem_file(std::string_view text) {
  std::string name;
  int n = 0;
  std::vector<std::optional<Bounds>> bounds;
  std::vector<std::pair<int, ExprPtr>> equations;
  std::vector<ReducedVar> reduced;
  std::vector<DecisionVector> roots;
  RootCount nor = RootCount::unknown();
  long nfes_max = 50000;
  double epsilon = 0.02;

  enum class Section { None, Problem, Reduction, Meta, Roots };
  Section section = Section::None;
  bool seen_problem = false;

  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    auto hash = raw.find('#');
    std::string_view line = strip(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.rfind("[problem]", 0) == 0) {
      if (seen_problem) fail(line_no, "duplicate [problem] section");
      seen_problem = true;
      section = Section::Problem;
      auto kv = parse_kv(line.substr(9), line_no);
      if (!kv.count("name") || !kv.count("vars"))
        fail(line_no, "[problem] needs name= and vars=");
      name = kv["name"];
      n = static_cast<int>(parse_integer(kv["vars"], line_no));
      if (n < 1) fail(line_no, "vars must be >= 1");
      bounds.assign(n, std::nullopt);
      continue;
    }
    if (line == "[reduction]") {
      if (!seen_problem) fail(line_no, "[reduction] before [problem]");
      section = Section::Reduction;
      continue;
    }
    if (line.rfind("[meta]", 0) == 0) {
      if (!seen_problem) fail(line_no, "[meta] before [problem]");
      section = Section::Meta;
      auto kv = parse_kv(line.substr(6), line_no);
      for (const auto& [key, value] : kv) {
        if (key == "nor") {
          if (value == "infinite") nor = RootCount::infinite();
          else if (value == "unknown") nor = RootCount::unknown();
          else nor = RootCount::finite(static_cast<int>(parse_integer(value, line_no)));
        } else if (key == "nfes_max") {
          nfes_max = parse_integer(value, line_no);
        } else if (key == "epsilon") {
          epsilon = parse_number(value, line_no);
        } else {
          fail(line_no, "unknown meta key '" + key + "'");
        }
      }
      continue;
    }
    if (line == "[roots]") {
      if (!seen_problem) fail(line_no, "[roots] before [problem]");
      section = Section::Roots;
      continue;
    }
    if (line.front() == '[') fail(line_no, "unknown section '" + std::string(line) + "'");
    if (!seen_problem) fail(line_no, "content before [problem] header");

    if (section == Section::Problem) {
      if (line.rfind("bounds:", 0) == 0) {
        for (auto entry : split(line.substr(7), ';')) parse_bound_entry(entry, n, bounds, line_no);
        continue;
      }
      if (line.rfind("eq", 0) == 0) {
        auto colon = line.find(':');
        if (colon == std::string_view::npos) fail(line_no, "equation line missing ':'");
        std::string_view id = line.substr(2, colon - 2);
        int k = 0;
        for (char c : id) {
          if (!std::isdigit(static_cast<unsigned char>(c))) fail(line_no, "bad equation label");
          k = k * 10 + (c - '0');
        }
        if (k != static_cast<int>(equations.size()) + 1)
          fail(line_no, "equations must be numbered consecutively from eq1 (got eq" +
                            std::to_string(k) + ")");
        try {
          equations.emplace_back(k, parse_expression(line.substr(colon + 1), n));
        } catch (const ParseError& e) {
          fail(line_no, std::string("in eq") + std::to_string(k) + ": " + e.what());
        }
        continue;
      }
      fail(line_no, "expected bounds: or eqN: line");
    }

    if (section == Section::Reduction) {
      if (line.rfind("reduce ", 0) != 0) fail(line_no, "expected 'reduce xI = ... eliminates eqK'");
      std::string_view rest = line.substr(7);
      auto eqpos = rest.find('=');
      if (eqpos == std::string_view::npos) fail(line_no, "reduce line missing '='");
      int target = parse_var_name(rest.substr(0, eqpos), n, line_no);
      std::string_view rhs = rest.substr(eqpos + 1);
      auto elim = rhs.rfind("eliminates");
      if (elim == std::string_view::npos) fail(line_no, "reduce line missing 'eliminates eqK'");
      std::string_view relation_text = strip(rhs.substr(0, elim));
      std::string_view eq_ref = strip(rhs.substr(elim + 10));
      if (eq_ref.rfind("eq", 0) != 0) fail(line_no, "expected eqK after 'eliminates'");
      long k = parse_integer(eq_ref.substr(2), line_no);
      MultiExpr relation;
      try {
        relation = parse_relation(relation_text, n);
      } catch (const ParseError& e) {
        fail(line_no, std::string("in relation for x") + std::to_string(target) + ": " + e.what());
      }
      reduced.push_back(ReducedVar{target, std::move(relation), static_cast<int>(k)});
      continue;
    }

    if (section == Section::Roots) {
      if (line.rfind("root:", 0) != 0) fail(line_no, "expected 'root: v1 v2 ...'");
      std::istringstream is{std::string(line.substr(5))};
      DecisionVector r;
      double v;
      while (is >> v) r.push_back(v);
      if (static_cast<int>(r.size()) != n) fail(line_no, "root has wrong dimension");
      roots.push_back(std::move(r));
      continue;
    }
    fail(line_no, "unexpected content '" + std::string(line) + "'");
  }

  if (!seen_problem) throw ParseError("missing [problem] section", 0);
  for (int v = 1; v <= n; ++v)
    if (!bounds[v - 1]) throw ParseError("no bounds declared for x" + std::to_string(v), 0);
  if (equations.empty()) throw ParseError("no equations declared", 0);

  std::vector<Bounds> bvec;
  bvec.reserve(n);
  for (auto& b : bounds) bvec.push_back(*b);
  std::vector<ExprPtr> eqs;
  eqs.reserve(equations.size());
  for (auto& [k, e] : equations) eqs.push_back(std::move(e));

  ParsedProblemFile out{
      NesProblem(std::move(name), std::move(bvec), std::move(eqs), nor, nfes_max),
      std::nullopt, epsilon};
  out.problem.set_known_roots(std::move(roots));

  if (!reduced.empty()) {
    ReductionScheme scheme(n, out.problem.equation_count(), std::move(reduced));
    auto violations = validate_scheme(out.problem, scheme);
    if (!violations.empty()) {
      std::string msg = "invalid reduction scheme:";
      for (const auto& v : violations) msg += "\n  - " + v;
      throw ParseError(msg, 0);
    }
    out.scheme = std::move(scheme);
  }
  return out;
}

std::string print_problem_file(const ParsedProblemFile& pf) {
  const NesProblem& p = pf.problem;
  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };

  os << "[problem] name=" << p.name() << " vars=" << p.var_count() << "\n";
  os << "bounds:";
  for (int v = 1; v <= p.var_count(); ++v) {
    const Bounds& b = p.bounds()[v - 1];
    os << (v == 1 ? " " : "; ") << 'x' << v << " in [" << num(b.lower) << "," << num(b.upper)
       << "]";
  }
  os << "\n";
  for (int k = 1; k <= p.equation_count(); ++k)
    os << "eq" << k << ": " << to_string(*p.equations()[k - 1]) << "\n";

  if (pf.scheme) {
    os << "[reduction]\n";
    for (const auto& rv : pf.scheme->reduced_vars())
      os << "reduce x" << rv.index << " = " << to_string(rv.relation) << " eliminates eq"
         << rv.eliminated_eq << "\n";
  }

  os << "[meta] nor=";
  switch (p.nor().kind) {
    case RootCount::Kind::Finite: os << p.nor().count; break;
    case RootCount::Kind::Infinite: os << "infinite"; break;
    case RootCount::Kind::Unknown: os << "unknown"; break;
  }
  os << " nfes_max=" << p.nfes_max() << " epsilon=" << num(pf.epsilon) << "\n";

  if (!p.known_roots().empty()) {
    os << "[roots]\n";
    for (const auto& r : p.known_roots()) {
      os << "root:";
      for (double v : r) os << ' ' << num(v);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace nes
