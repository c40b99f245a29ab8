#pragma once

// Generators and reference implementations shared by the unit and acceptance tests.
// Nothing here calls into the parser's search code.

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordlog/core.hpp"
#include "ordlog/grammar.hpp"
#include "ordlog/logic.hpp"
#include "ordlog/parser.hpp"
#include "ordlog/structure_io.hpp"

namespace testkit {

using namespace ordlog;

inline std::string source_path(const std::string& rel) { return std::string(ORDLOG_SOURCE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& rel) {
  std::ifstream in(source_path(rel), std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + rel);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline const Grammar& german() {
  static const Grammar g = load_grammar(read_file("grammars/german-v2.gr"));
  return g;
}

inline const Grammar& anbncn() {
  static const Grammar g = load_grammar(read_file("grammars/anbncn.gr"));
  return g;
}

inline DependencyStructure fig1() { return parse_structure(read_file("structures/fig1.struct")); }

inline std::vector<std::string> words_of(const std::string& sentence) {
  std::istringstream in(sentence);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::vector<std::string> subset(std::mt19937& rng, const std::vector<std::string>& from, double p) {
  std::vector<std::string> out;
  for (const auto& s : from)
    if (coin(rng, p)) out.push_back(s);
  return out;
}

struct Symbols {
  std::vector<std::string> classes{"A", "B", "C"};
  std::vector<std::string> features{"f", "g", "h"};
  std::vector<std::string> deps{"x", "y", "z"};
};

// ---------------------------------------------------------------------------
// Random well-formed structures. Placements are chosen first and the word order is
// built from them, so the generator knows every word's containing domain and
// positional head without deriving them.

struct Generated {
  DependencyStructure structure;
  std::vector<DomainRef> containing;  // per word id
  std::vector<int> positional;        // per word id, kRoot for the root
  std::vector<DomainRef> placed_in;   // per word id, kRootDomain for the root
};

inline Generated random_structure(std::mt19937& rng, int max_words, const Symbols& sym = {}, int max_domains = 3) {
  const int n = pick(rng, 1, max_words);
  // Work in creation order t; t = 0 is the root, heads are created first.
  std::vector<int> head(static_cast<std::size_t>(n), kRoot);
  std::vector<std::string> type(static_cast<std::size_t>(n));
  std::vector<int> dc(static_cast<std::size_t>(n));
  std::vector<int> cont(static_cast<std::size_t>(n));
  std::vector<int> ph(static_cast<std::size_t>(n), kRoot);
  std::vector<int> pj(static_cast<std::size_t>(n), 1);
  for (int t = 0; t < n; ++t) {
    auto ti = static_cast<std::size_t>(t);
    dc[ti] = pick(rng, 1, max_domains);
    cont[ti] = pick(rng, 1, dc[ti]);
    if (t == 0) continue;
    head[ti] = pick(rng, 0, t - 1);
    type[ti] = sym.deps[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(sym.deps.size()) - 1))];
    std::vector<int> ancestors;
    for (int x = head[ti]; x != kRoot; x = head[static_cast<std::size_t>(x)]) ancestors.push_back(x);
    ph[ti] = ancestors[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(ancestors.size()) - 1))];
    pj[ti] = pick(rng, 1, dc[static_cast<std::size_t>(ph[ti])]);
  }

  // A word's block: its domains in sequence, each a shuffle of the word itself (in its
  // containing domain) and the blocks of the words placed there.
  auto block = [&](auto&& self, int t) -> std::vector<int> {
    std::vector<int> out;
    for (int k = 1; k <= dc[static_cast<std::size_t>(t)]; ++k) {
      std::vector<std::vector<int>> items;
      if (cont[static_cast<std::size_t>(t)] == k) items.push_back({t});
      for (int u = 0; u < n; ++u)
        if (ph[static_cast<std::size_t>(u)] == t && pj[static_cast<std::size_t>(u)] == k) items.push_back(self(self, u));
      std::shuffle(items.begin(), items.end(), rng);
      for (const auto& it : items) out.insert(out.end(), it.begin(), it.end());
    }
    return out;
  };
  std::vector<int> order = block(block, 0);  // position -> t
  std::vector<int> id(static_cast<std::size_t>(n));  // t -> word id
  for (int p = 0; p < n; ++p) id[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
  auto wid = [&](int t) { return t == kRoot ? kRoot : id[static_cast<std::size_t>(t)]; };

  std::map<DomainRef, std::vector<int>> members;
  for (int t = 0; t < n; ++t)
    for (int k = 1; k <= dc[static_cast<std::size_t>(t)]; ++k) members[{wid(t), k}];
  for (int t = 0; t < n; ++t) {
    members[{wid(t), cont[static_cast<std::size_t>(t)]}].push_back(wid(t));
    for (int o = ph[static_cast<std::size_t>(t)], j = pj[static_cast<std::size_t>(t)]; o != kRoot;) {
      members[{wid(o), j}].push_back(wid(t));
      int next = ph[static_cast<std::size_t>(o)];
      j = pj[static_cast<std::size_t>(o)];
      o = next;
    }
  }

  std::vector<Word> words(static_cast<std::size_t>(n));
  Generated g;
  g.containing.resize(static_cast<std::size_t>(n));
  g.positional.resize(static_cast<std::size_t>(n));
  g.placed_in.resize(static_cast<std::size_t>(n));
  std::vector<DependencyEdge> edges;
  for (int t = 0; t < n; ++t) {
    auto ti = static_cast<std::size_t>(t);
    const int w = wid(t);
    auto& word = words[static_cast<std::size_t>(w)];
    word.id = w;
    word.surface = "w" + std::to_string(t);
    word.word_class = sym.classes[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(sym.classes.size()) - 1))];
    word.features = subset(rng, sym.features, 0.5);
    word.domain_count = dc[ti];
    if (t > 0) edges.push_back({wid(head[ti]), w, type[ti]});
    g.containing[static_cast<std::size_t>(w)] = {w, cont[ti]};
    g.positional[static_cast<std::size_t>(w)] = wid(ph[ti]);
    g.placed_in[static_cast<std::size_t>(w)] = t == 0 ? kRootDomain : DomainRef{wid(ph[ti]), pj[ti]};
  }
  std::vector<DomainNode> domains;
  for (auto& [ref, m] : members) domains.push_back({ref.owner, ref.index, m});
  g.structure = DependencyStructure(std::move(words), wid(0), std::move(edges), std::move(domains));
  return g;
}

// ---------------------------------------------------------------------------
// Reference satisfaction, one case per row, computed from the generator's ground truth
// with plain set scans.

struct BadIndex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Reference {
 public:
  explicit Reference(const Generated& g) : g_(g), s_(g.structure) {}

  bool eval(int w, const Formula& f) const {
    using K = Formula::Kind;
    const Word& word = s_.word(w);
    switch (f.kind) {
      case K::Class: return word.word_class == f.symbol;
      case K::Feature: return word.has_feature(f.symbol);
      case K::Dep:
        for (const auto& e : s_.edges())
          if (e.head == w && e.dep_type == f.symbol && eval(e.dependent, f.operands[0])) return true;
        return false;
      case K::PrecAll:
      case K::FollAll:
        for (int v : s_.domain(g_.containing[ix(w)]).members)
          if (v != w && (f.kind == K::PrecAll ? v < w : v > w)) return false;
        return true;
      case K::PrecTypes:
      case K::FollTypes: {
        const auto& scope = g_.placed_in[ix(w)] == kRootDomain ? all_words() : s_.domain(g_.placed_in[ix(w)]).members;
        for (int v : scope) {
          if (v == w || (f.kind == K::PrecTypes ? v > w : v < w)) continue;
          std::string t = incoming(v);
          if (!t.empty() && std::count(f.symbols.begin(), f.symbols.end(), t)) return false;
        }
        return true;
      }
      case K::Float: {
        if (w == s_.root()) return true;
        // Walk down from the positional head is awkward; walk up from the direct head.
        for (int x = head(w); x != g_.positional[ix(w)]; x = head(x))
          if (!std::count(f.symbols.begin(), f.symbols.end(), incoming(x))) return false;
        return true;
      }
      case K::Single: {
        const auto& m = owned(w, f.index);
        int phrases = 0;
        for (int v : m)
          if (head(v) == kRoot || !std::count(m.begin(), m.end(), head(v))) ++phrases;
        return phrases <= 1;
      }
      case K::Filled: return !owned(w, f.index).empty();
      case K::AllInDomain:
        for (int v : owned(w, f.index))
          for (const auto& a : f.symbols)
            if (!s_.word(v).has_feature(a)) return false;
        return true;
      case K::And:
        for (const auto& g : f.operands)
          if (!eval(w, g)) return false;
        return true;
      case K::Not: return !eval(w, f.operands[0]);
    }
    return false;
  }

 private:
  static std::size_t ix(int w) { return static_cast<std::size_t>(w); }

  int head(int w) const {
    for (const auto& e : s_.edges())
      if (e.dependent == w) return e.head;
    return kRoot;
  }

  std::string incoming(int w) const {
    for (const auto& e : s_.edges())
      if (e.dependent == w) return e.dep_type;
    return {};
  }

  const std::vector<int>& owned(int w, int i) const {
    if (i < 1 || i > s_.word(w).domain_count) throw BadIndex("domain index out of range");
    return s_.domain({w, i}).members;
  }

  const std::vector<int>& all_words() const {
    if (all_.empty())
      for (int v = 0; v < static_cast<int>(s_.size()); ++v) all_.push_back(v);
    return all_;
  }

  const Generated& g_;
  const DependencyStructure& s_;
  mutable std::vector<int> all_;
};

// ---------------------------------------------------------------------------
// Random formulas over a symbol set. Domain indices go up to max_index, which may exceed
// a word's domain count on purpose.

inline Formula random_formula(std::mt19937& rng, int depth, const Symbols& sym = {}, int max_index = 3) {
  auto one = [&](const std::vector<std::string>& v) { return v[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1))]; };
  const int kind = pick(rng, 0, depth > 0 ? 15 : 10);
  switch (kind) {
    case 0: return Formula::class_atom(one(sym.classes));
    case 1: return Formula::feature(one(sym.features));
    case 2: return Formula::first();
    case 3: return Formula::last();
    case 4: return Formula::prec(subset(rng, sym.deps, 0.5));
    case 5: return Formula::foll(subset(rng, sym.deps, 0.5));
    case 6: return Formula::floating(subset(rng, sym.deps, 0.5));
    case 7: return Formula::single(pick(rng, 1, max_index));
    case 8: return Formula::filled(pick(rng, 1, max_index));
    case 9: return Formula::all(pick(rng, 1, max_index), subset(rng, sym.features, 0.4));
    case 10: return Formula::truth();
    case 11: return Formula::dep(one(sym.deps), random_formula(rng, depth - 1, sym, max_index));
    case 12: return Formula::negate(random_formula(rng, depth - 1, sym, max_index));
    case 13: return Formula::disj({random_formula(rng, depth - 1, sym, max_index), random_formula(rng, depth - 1, sym, max_index)});
    case 14: return Formula::equiv(random_formula(rng, depth - 1, sym, max_index), random_formula(rng, depth - 1, sym, max_index));
    default: {
      std::vector<Formula> ops;
      for (int k = pick(rng, 0, 3); k > 0; --k) ops.push_back(random_formula(rng, depth - 1, sym, max_index));
      return Formula::conj(std::move(ops));
    }
  }
}

// ---------------------------------------------------------------------------
// Random mini-grammars: at most 4 classes, 3 dependency types, a handful of surfaces.

struct MiniCase {
  Grammar grammar;
  std::vector<std::string> tokens;
};

inline Formula gentle_formula(std::mt19937& rng, const Symbols& sym, int max_index) {
  // Mostly true-leaning shapes so that a fair share of sentences parse.
  Formula f = random_formula(rng, 1, sym, max_index);
  return coin(rng, 0.5) ? Formula::disj({f, random_formula(rng, 1, sym, max_index)}) : f;
}

inline MiniCase random_mini_case(std::mt19937& rng) {
  Symbols sym;
  sym.classes.clear();
  sym.deps.clear();
  for (int i = pick(rng, 1, 4); i > 0; --i) sym.classes.push_back("C" + std::to_string(sym.classes.size()));
  for (int i = pick(rng, 1, 3); i > 0; --i) sym.deps.push_back("d" + std::to_string(sym.deps.size()));
  sym.features = {"f", "g"};

  MiniCase c;
  Grammar& g = c.grammar;
  g.classes = sym.classes;
  g.features = sym.features;
  g.dep_types = sym.deps;
  for (const auto& cls : sym.classes)
    if (coin(rng, 0.3)) g.axioms[cls] = gentle_formula(rng, sym, 1);

  const int surfaces = pick(rng, 2, 3);
  for (int s = 0; s < surfaces; ++s) {
    std::vector<std::string> classes = sym.classes;
    std::shuffle(classes.begin(), classes.end(), rng);
    const int entries = std::min<int>(pick(rng, 1, 2), static_cast<int>(classes.size()));
    for (int k = 0; k < entries; ++k) {
      LexEntry e;
      e.surface = "t" + std::to_string(s);
      e.word_class = classes[static_cast<std::size_t>(k)];
      e.domain_count = pick(rng, 1, 2);
      for (const auto& a : sym.features) {
        int r = pick(rng, 0, 3);
        if (r == 1) e.fixed_features.push_back(a);
        if (r == 2) e.free_features.push_back(a);
      }
      if (coin(rng, 0.5)) e.constraint = gentle_formula(rng, sym, e.domain_count);
      for (const auto& d : sym.deps) {
        if (!coin(rng, 0.45)) continue;
        Slot slot;
        slot.dep_type = d;
        slot.min = pick(rng, 0, 1);
        slot.max = pick(rng, std::max(1, slot.min), 2);
        if (coin(rng, 0.4)) slot.filler = random_formula(rng, 0, sym, 1);
        slot.float_set = subset(rng, sym.deps, 0.5);
        e.slots.push_back(std::move(slot));
      }
      g.entries.push_back(std::move(e));
    }
  }
  const int n = pick(rng, 1, 5);
  for (int i = 0; i < n; ++i) c.tokens.push_back("t" + std::to_string(pick(rng, 0, surfaces - 1)));
  return c;
}

// ---------------------------------------------------------------------------
// Orders found by trying every permutation of the tree's words through parse(). An order
// counts when some structure has the same classes and, mapped back to tree ids, the same
// edges.

inline bool realizes(const DependencyStructure& s, const DependencyStructure& tree, const std::vector<int>& word_at) {
  for (std::size_t p = 0; p < word_at.size(); ++p)
    if (s.word(static_cast<int>(p)).word_class != tree.word(word_at[p]).word_class) return false;
  std::vector<DependencyEdge> mapped;
  for (const auto& e : s.edges())
    mapped.push_back({word_at[static_cast<std::size_t>(e.head)], word_at[static_cast<std::size_t>(e.dependent)], e.dep_type});
  std::sort(mapped.begin(), mapped.end());
  return mapped == tree.edges();
}

inline std::vector<std::vector<std::string>> blind_orders(const Grammar& g, const DependencyStructure& tree) {
  std::vector<int> word_at(tree.size());
  for (std::size_t i = 0; i < word_at.size(); ++i) word_at[i] = static_cast<int>(i);
  std::set<std::vector<std::string>> found;
  do {
    ParseTask t;
    t.grammar = &g;
    for (int w : word_at) t.tokens.push_back(tree.word(w).surface);
    if (found.count(t.tokens)) continue;
    for (const auto& s : parse(t).structures)
      if (realizes(s, tree, word_at)) {
        found.insert(t.tokens);
        break;
      }
  } while (std::next_permutation(word_at.begin(), word_at.end()));
  return {found.begin(), found.end()};
}

}  // namespace testkit
