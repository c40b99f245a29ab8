#include "ordlog/logic.hpp"

#include <algorithm>
#include <sstream>

#include "ordlog/errors.hpp"

namespace ordlog {
namespace {

std::vector<std::string> normalized(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool contains(const std::vector<std::string>& sorted, std::string_view s) {
  return std::binary_search(sorted.begin(), sorted.end(), s);
}

bool declared(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

Formula Formula::class_atom(std::string c) {
  Formula f;
  f.kind = Kind::Class;
  f.symbol = std::move(c);
  return f;
}

Formula Formula::feature(std::string a) {
  Formula f;
  f.kind = Kind::Feature;
  f.symbol = std::move(a);
  return f;
}

Formula Formula::dep(std::string d, Formula inner) {
  Formula f;
  f.kind = Kind::Dep;
  f.symbol = std::move(d);
  f.operands.push_back(std::move(inner));
  return f;
}

Formula Formula::first() {
  Formula f;
  f.kind = Kind::PrecAll;
  return f;
}

Formula Formula::last() {
  Formula f;
  f.kind = Kind::FollAll;
  return f;
}

Formula Formula::prec(std::vector<std::string> types) {
  Formula f;
  f.kind = Kind::PrecTypes;
  f.symbols = normalized(std::move(types));
  return f;
}

Formula Formula::foll(std::vector<std::string> types) {
  Formula f;
  f.kind = Kind::FollTypes;
  f.symbols = normalized(std::move(types));
  return f;
}

Formula Formula::floating(std::vector<std::string> types) {
  Formula f;
  f.kind = Kind::Float;
  f.symbols = normalized(std::move(types));
  return f;
}

Formula Formula::single(int i) {
  Formula f;
  f.kind = Kind::Single;
  f.index = i;
  return f;
}

Formula Formula::filled(int i) {
  Formula f;
  f.kind = Kind::Filled;
  f.index = i;
  return f;
}

Formula Formula::all(int i, std::vector<std::string> features) {
  Formula f;
  f.kind = Kind::AllInDomain;
  f.index = i;
  f.symbols = normalized(std::move(features));
  return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
  Formula f;
  f.kind = Kind::And;
  f.operands = std::move(fs);
  return f;
}

Formula Formula::negate(Formula inner) {
  Formula f;
  f.kind = Kind::Not;
  f.operands.push_back(std::move(inner));
  return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
  for (auto& f : fs) f = negate(std::move(f));
  return negate(conj(std::move(fs)));
}

Formula Formula::implies(Formula a, Formula b) { return negate(conj({std::move(a), negate(std::move(b))})); }

Formula Formula::equiv(Formula a, Formula b) { return conj({implies(a, b), implies(b, a)}); }

// ---------------------------------------------------------------------------

namespace {

using sexpr::Node;

std::string symbol_arg(const Node& node) {
  if (!node.is_symbol() || node.is_keyword()) sexpr::fail(node, "expected symbol");
  return node.text;
}

int index_arg(const Node& node) {
  if (!node.is_integer()) sexpr::fail(node, "expected domain index");
  if (node.value < 1) sexpr::fail(node, "domain index must be at least 1");
  return static_cast<int>(node.value);
}

void expect_arity(const Node& node, std::size_t n) {
  if (node.items.size() != n + 1)
    sexpr::fail(node, "(" + node.items[0].text + " ...) takes " + std::to_string(n) + " argument(s)");
}

std::vector<std::string> symbol_rest(const Node& node, std::size_t from) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < node.items.size(); ++i) out.push_back(symbol_arg(node.items[i]));
  return out;
}

std::vector<Formula> formula_rest(const Node& node) {
  std::vector<Formula> out;
  for (std::size_t i = 1; i < node.items.size(); ++i) out.push_back(parse_formula(node.items[i]));
  return out;
}

}  // namespace

Formula parse_formula(const Node& node) {
  if (!node.is_list() || node.items.empty() || !node.items[0].is_symbol()) sexpr::fail(node, "expected a formula");
  const std::string& op = node.items[0].text;
  if (op == "class") {
    expect_arity(node, 1);
    return Formula::class_atom(symbol_arg(node.items[1]));
  }
  if (op == "feat") {
    expect_arity(node, 1);
    return Formula::feature(symbol_arg(node.items[1]));
  }
  if (op == "dep") {
    expect_arity(node, 2);
    return Formula::dep(symbol_arg(node.items[1]), parse_formula(node.items[2]));
  }
  if (op == "first") {
    expect_arity(node, 0);
    return Formula::first();
  }
  if (op == "last") {
    expect_arity(node, 0);
    return Formula::last();
  }
  if (op == "prec") return Formula::prec(symbol_rest(node, 1));
  if (op == "foll") return Formula::foll(symbol_rest(node, 1));
  if (op == "float") return Formula::floating(symbol_rest(node, 1));
  if (op == "single") {
    expect_arity(node, 1);
    return Formula::single(index_arg(node.items[1]));
  }
  if (op == "filled") {
    expect_arity(node, 1);
    return Formula::filled(index_arg(node.items[1]));
  }
  if (op == "all") {
    if (node.items.size() < 2) sexpr::fail(node, "(all i feat...) needs a domain index");
    for (std::size_t i = 2; i < node.items.size(); ++i)
      if (node.items[i].is_list()) sexpr::fail(node.items[i], "(all i ...) accepts only feature names");
    return Formula::all(index_arg(node.items[1]), symbol_rest(node, 2));
  }
  if (op == "and") return Formula::conj(formula_rest(node));
  if (op == "or") return Formula::disj(formula_rest(node));
  if (op == "not") {
    expect_arity(node, 1);
    return Formula::negate(parse_formula(node.items[1]));
  }
  if (op == "implies") {
    expect_arity(node, 2);
    return Formula::implies(parse_formula(node.items[1]), parse_formula(node.items[2]));
  }
  if (op == "equiv") {
    expect_arity(node, 2);
    return Formula::equiv(parse_formula(node.items[1]), parse_formula(node.items[2]));
  }
  sexpr::fail(node.items[0], "unknown formula operator '" + op + "'");
}

Formula parse_formula(std::string_view text) { return parse_formula(sexpr::read_one(text)); }

namespace {

void write(std::ostream& out, const Formula& f) {
  auto symbols = [&](const char* op) {
    out << '(' << op;
    for (const auto& s : f.symbols) out << ' ' << s;
    out << ')';
  };
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Class: out << "(class " << f.symbol << ')'; break;
    case K::Feature: out << "(feat " << f.symbol << ')'; break;
    case K::Dep:
      out << "(dep " << f.symbol << ' ';
      write(out, f.operands[0]);
      out << ')';
      break;
    case K::PrecAll: out << "(first)"; break;
    case K::FollAll: out << "(last)"; break;
    case K::PrecTypes: symbols("prec"); break;
    case K::FollTypes: symbols("foll"); break;
    case K::Float: symbols("float"); break;
    case K::Single: out << "(single " << f.index << ')'; break;
    case K::Filled: out << "(filled " << f.index << ')'; break;
    case K::AllInDomain:
      out << "(all " << f.index;
      for (const auto& s : f.symbols) out << ' ' << s;
      out << ')';
      break;
    case K::And:
      out << "(and";
      for (const auto& g : f.operands) {
        out << ' ';
        write(out, g);
      }
      out << ')';
      break;
    case K::Not:
      out << "(not ";
      write(out, f.operands[0]);
      out << ')';
      break;
  }
}

}  // namespace

std::string format_formula(const Formula& f) {
  std::ostringstream out;
  write(out, f);
  return out.str();
}

// ---------------------------------------------------------------------------

bool Declarations::has_class(std::string_view c) const { return declared(classes, c); }
bool Declarations::has_feature(std::string_view a) const { return declared(features, a); }
bool Declarations::has_dep_type(std::string_view d) const { return declared(dep_types, d); }

namespace {

void collect_free(const Formula& f, const Declarations& decls, std::vector<std::string>& out) {
  auto note = [&](const std::string& s, bool ok) {
    if (!ok && !declared(out, s)) out.push_back(s);
  };
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Class: note(f.symbol, decls.has_class(f.symbol)); break;
    case K::Feature: note(f.symbol, decls.has_feature(f.symbol)); break;
    case K::Dep: note(f.symbol, decls.has_dep_type(f.symbol)); break;
    case K::PrecTypes:
    case K::FollTypes:
    case K::Float:
      for (const auto& s : f.symbols) note(s, decls.has_dep_type(s));
      break;
    case K::AllInDomain:
      for (const auto& s : f.symbols) note(s, decls.has_feature(s));
      break;
    default: break;
  }
  for (const auto& g : f.operands) collect_free(g, decls, out);
}

}  // namespace

std::vector<std::string> free_variables_check(const Formula& f, const Declarations& decls) {
  std::vector<std::string> out;
  collect_free(f, decls, out);
  return out;
}

int max_domain_index(const Formula& f) {
  int m = f.index;
  for (const auto& g : f.operands) m = std::max(m, max_domain_index(g));
  return m;
}

// ---------------------------------------------------------------------------

namespace {

const DomainNode& owned_domain(const StructureIndex& index, int word, int i) {
  const Word& w = index.structure().word(word);
  if (i < 1 || i > w.domain_count)
    throw EvaluationError("domain index " + std::to_string(i) + " exceeds the " + std::to_string(w.domain_count) +
                          " domain(s) of word " + std::to_string(word) + " \"" + w.surface + "\"");
  return index.structure().domain({word, i});
}

bool typed_neighbour(const StructureIndex& index, int word, const std::vector<std::string>& types, bool before) {
  const auto& scope = index.structure().domain(index.places(word).domain);
  for (int v : scope.members) {
    if (v == word || (before ? v > word : v < word)) continue;
    if (index.head(v) != kRoot && contains(types, index.incoming_type(v))) return true;
  }
  return false;
}

}  // namespace

bool satisfies(const StructureIndex& index, int w, const Formula& f) {
  const DependencyStructure& s = index.structure();
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Class: return s.word(w).word_class == f.symbol;
    case K::Feature: return s.word(w).has_feature(f.symbol);
    case K::Dep:
      for (int v : index.dependents(w))
        if (index.incoming_type(v) == f.symbol && satisfies(index, v, f.operands[0])) return true;
      return false;
    case K::PrecAll: {
      const auto& m = index.containing_domain(w);
      return m.members.front() == w;
    }
    case K::FollAll: {
      const auto& m = index.containing_domain(w);
      return m.members.back() == w;
    }
    case K::PrecTypes: return !typed_neighbour(index, w, f.symbols, true);
    case K::FollTypes: return !typed_neighbour(index, w, f.symbols, false);
    case K::Float: {
      int positional = index.places(w).positional_head;
      int x = index.head(w);
      while (x != positional) {
        if (x == kRoot || !contains(f.symbols, index.incoming_type(x))) return false;
        x = index.head(x);
      }
      return true;
    }
    case K::Single: {
      const auto& m = owned_domain(index, w, f.index);
      return index.maximal_members(m.ref()).size() <= 1;
    }
    case K::Filled: return !owned_domain(index, w, f.index).empty();
    case K::AllInDomain: {
      const auto& m = owned_domain(index, w, f.index);
      for (int v : m.members)
        for (const auto& a : f.symbols)
          if (!s.word(v).has_feature(a)) return false;
      return true;
    }
    case K::And:
      for (const auto& g : f.operands)
        if (!satisfies(index, w, g)) return false;
      return true;
    case K::Not: return !satisfies(index, w, f.operands[0]);
  }
  return false;
}

bool satisfies(const DependencyStructure& structure, int word, const Formula& f) {
  return satisfies(StructureIndex(structure), word, f);
}

}  // namespace ordlog
