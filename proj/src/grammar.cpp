#include "ordlog/grammar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ordlog/errors.hpp"
#include "ordlog/sexpr.hpp"

namespace ordlog {
namespace {

using sexpr::Node;

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string symbol_of(const Node& node) {
  if (!node.is_symbol() || node.is_keyword()) sexpr::fail(node, "expected symbol");
  return node.text;
}

std::vector<std::string> symbol_list(const Node& node) {
  if (!node.is_list()) sexpr::fail(node, "expected a list of symbols");
  std::vector<std::string> out;
  for (const Node& n : node.items) out.push_back(symbol_of(n));
  return out;
}

int int_of(const Node& node) {
  if (!node.is_integer()) sexpr::fail(node, "expected integer");
  return static_cast<int>(node.value);
}

void require_declared(const std::vector<std::string>& symbols, const std::vector<std::string>& declared,
                      const char* kind, const std::string& where) {
  for (const auto& s : symbols)
    if (std::find(declared.begin(), declared.end(), s) == declared.end())
      throw GrammarError("undeclared " + std::string(kind) + " '" + s + "' in " + where, s);
}

void require_formula(const Formula& f, const Grammar& g, const std::string& where) {
  auto free = free_variables_check(f, g);
  if (!free.empty()) throw GrammarError("undeclared symbol '" + free.front() + "' in " + where, free.front());
}

Slot parse_slot(const Node& node) {
  if (node.items.size() < 2) sexpr::fail(node, "(slot <dep> ...) needs a dependency type");
  Slot slot;
  slot.dep_type = symbol_of(node.items[1]);
  bool min_set = false;
  bool max_set = false;
  for (std::size_t k = 2; k < node.items.size(); k += 2) {
    const Node& key = node.items[k];
    if (!key.is_keyword()) sexpr::fail(key, "expected slot keyword");
    if (k + 1 >= node.items.size()) sexpr::fail(key, "keyword without value");
    const Node& v = node.items[k + 1];
    if (key.text == ":min") {
      slot.min = int_of(v);
      min_set = true;
    } else if (key.text == ":max") {
      slot.max = int_of(v);
      max_set = true;
    } else if (key.text == ":filler") {
      slot.filler = parse_formula(v);
    } else if (key.text == ":float") {
      slot.float_set = sorted_unique(symbol_list(v));
    } else {
      sexpr::fail(key, "unknown slot keyword " + key.text);
    }
  }
  // A lone bound drags the other along: (:min 0) alone means optional single.
  if (min_set && !max_set) slot.max = std::max(1, slot.min);
  if (max_set && !min_set) slot.min = std::min(1, slot.max);
  if (slot.min < 0 || slot.max < 1 || slot.min > slot.max || slot.max > kMaxSlotCardinality)
    sexpr::fail(node, "slot bounds must satisfy 0 <= min <= max, 1 <= max <= " + std::to_string(kMaxSlotCardinality));
  return slot;
}

LexEntry parse_word(const Node& node) {
  if (node.items.size() < 2 || !node.items[1].is_string()) sexpr::fail(node, "(word \"<surface>\" ...) needs a surface string");
  LexEntry e;
  e.surface = node.items[1].text;
  bool has_class = false;
  std::size_t k = 2;
  while (k < node.items.size()) {
    const Node& item = node.items[k];
    if (item.is_form("slot")) {
      e.slots.push_back(parse_slot(item));
      ++k;
      continue;
    }
    if (!item.is_keyword()) sexpr::fail(item, "expected keyword or (slot ...)");
    if (k + 1 >= node.items.size()) sexpr::fail(item, "keyword without value");
    const Node& v = node.items[k + 1];
    if (item.text == ":class") {
      e.word_class = symbol_of(v);
      has_class = true;
    } else if (item.text == ":fixed") {
      e.fixed_features = sorted_unique(symbol_list(v));
    } else if (item.text == ":free") {
      e.free_features = sorted_unique(symbol_list(v));
    } else if (item.text == ":domains") {
      e.domain_count = int_of(v);
      if (e.domain_count < 1) sexpr::fail(v, "domain count must be positive");
    } else if (item.text == ":constraint") {
      e.constraint = parse_formula(v);
    } else {
      sexpr::fail(item, "unknown word keyword " + item.text);
    }
    k += 2;
  }
  if (!has_class) sexpr::fail(node, "word \"" + e.surface + "\" lacks :class");
  return e;
}

}  // namespace

const Slot* LexEntry::find_slot(std::string_view dep_type) const {
  for (const auto& s : slots)
    if (s.dep_type == dep_type) return &s;
  return nullptr;
}

void check_grammar(const Grammar& g) {
  for (const auto& [cls, axiom] : g.axioms) {
    if (!g.has_class(cls)) throw GrammarError("axiom for undeclared class '" + cls + "'", cls);
    require_formula(axiom, g, "axiom for " + cls);
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : g.entries) {
    std::string where = "entry \"" + e.surface + "\"";
    if (!g.has_class(e.word_class)) throw GrammarError("undeclared class '" + e.word_class + "' in " + where, e.word_class);
    if (!seen.emplace(e.surface, e.word_class).second)
      throw GrammarError("duplicate entry for \"" + e.surface + "\" with class " + e.word_class, e.surface);
    require_declared(e.fixed_features, g.features, "feature", where);
    require_declared(e.free_features, g.features, "feature", where);
    for (const auto& a : e.fixed_features)
      if (std::binary_search(e.free_features.begin(), e.free_features.end(), a))
        throw GrammarError("feature '" + a + "' is both fixed and free in " + where, a);
    require_formula(e.constraint, g, where);
    Formula effective = effective_constraint(e, g);
    if (max_domain_index(effective) > e.domain_count)
      throw GrammarError("constraint of " + where + " refers to domain " + std::to_string(max_domain_index(effective)) +
                         " but the entry has " + std::to_string(e.domain_count));
    std::set<std::string> slot_types;
    for (const auto& s : e.slots) {
      if (!g.has_dep_type(s.dep_type)) throw GrammarError("undeclared dependency type '" + s.dep_type + "' in " + where, s.dep_type);
      if (!slot_types.insert(s.dep_type).second)
        throw GrammarError("two slots of type '" + s.dep_type + "' in " + where, s.dep_type);
      require_declared(s.float_set, g.dep_types, "dependency type", where);
      require_formula(s.filler, g, where + " slot " + s.dep_type);
      if (s.min < 0 || s.max < 1 || s.min > s.max || s.max > kMaxSlotCardinality)
        throw GrammarError("bad cardinality on slot " + s.dep_type + " of " + where);
    }
  }
}

Grammar load_grammar(std::string_view text) {
  Node top = sexpr::read_one(text);
  if (!top.is_form("grammar")) sexpr::fail(top, "expected (grammar ...)");
  Grammar g;
  for (std::size_t i = 1; i < top.items.size(); ++i) {
    const Node& part = top.items[i];
    if (part.is_form("classes") || part.is_form("features") || part.is_form("deps")) {
      auto& target = part.is_form("classes") ? g.classes : part.is_form("features") ? g.features : g.dep_types;
      for (std::size_t k = 1; k < part.items.size(); ++k) {
        std::string s = symbol_of(part.items[k]);
        if (std::find(target.begin(), target.end(), s) == target.end()) target.push_back(std::move(s));
      }
    } else if (part.is_form("axiom")) {
      if (part.items.size() != 3) sexpr::fail(part, "expected (axiom <class> <formula>)");
      std::string cls = symbol_of(part.items[1]);
      Formula f = parse_formula(part.items[2]);
      auto it = g.axioms.find(cls);
      if (it == g.axioms.end()) g.axioms.emplace(cls, std::move(f));
      else it->second = Formula::conj({std::move(it->second), std::move(f)});
    } else if (part.is_form("word")) {
      g.entries.push_back(parse_word(part));
    } else {
      sexpr::fail(part, "expected (classes ...), (features ...), (deps ...), (axiom ...) or (word ...)");
    }
  }
  check_grammar(g);
  return g;
}

namespace {

void write_symbols(std::ostream& out, const std::vector<std::string>& v) {
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  out << ')';
}

}  // namespace

std::string serialize_grammar(const Grammar& g) {
  std::ostringstream out;
  out << "(grammar\n  (classes";
  for (const auto& c : g.classes) out << ' ' << c;
  out << ")\n  (features";
  for (const auto& a : g.features) out << ' ' << a;
  out << ")\n  (deps";
  for (const auto& d : g.dep_types) out << ' ' << d;
  out << ')';
  for (const auto& [cls, f] : g.axioms) out << "\n  (axiom " << cls << ' ' << format_formula(f) << ')';
  for (const auto& e : g.entries) {
    out << "\n  (word " << sexpr::quote(e.surface) << " :class " << e.word_class << " :fixed ";
    write_symbols(out, e.fixed_features);
    out << " :free ";
    write_symbols(out, e.free_features);
    out << " :domains " << e.domain_count << "\n    :constraint " << format_formula(e.constraint);
    for (const auto& s : e.slots) {
      out << "\n    (slot " << s.dep_type << " :min " << s.min << " :max " << s.max << " :filler " << format_formula(s.filler)
          << " :float ";
      write_symbols(out, s.float_set);
      out << ')';
    }
    out << ')';
  }
  out << ")\n";
  return out.str();
}

std::vector<const LexEntry*> lookup(const Grammar& g, std::string_view surface) {
  std::vector<const LexEntry*> out;
  for (const auto& e : g.entries)
    if (e.surface == surface) out.push_back(&e);
  return out;
}

Formula effective_constraint(const LexEntry& entry, const Grammar& g) {
  auto it = g.axioms.find(entry.word_class);
  if (it == g.axioms.end()) return entry.constraint;
  if (entry.constraint == Formula::truth()) return it->second;
  return Formula::conj({it->second, entry.constraint});
}

}  // namespace ordlog
