#include "engine.hpp"

#include <algorithm>
#include <bit>

#include "ordlog/errors.hpp"

namespace ordlog::detail {
namespace {

int position_in(const std::vector<std::string>& v, const std::string& s) {
  auto it = std::find(v.begin(), v.end(), s);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

Tri kleene_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

Tri kleene_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::False;
}

Tri kleene_not(Tri a) {
  if (a == Tri::Unknown) return a;
  return a == Tri::True ? Tri::False : Tri::True;
}

}  // namespace

// ---------------------------------------------------------------------------

CompiledGrammar::CompiledGrammar(const Grammar& grammar) : grammar_(&grammar) {
  if (grammar.features.size() > 64 || grammar.dep_types.size() > 64)
    throw GrammarError("the search supports at most 64 features and 64 dependency types");
  entries_.reserve(grammar.entries.size());
  for (const auto& e : grammar.entries) {
    EntryInfo info;
    info.entry = &e;
    info.class_id = class_id(e.word_class);
    for (const auto& a : e.fixed_features) info.fixed |= bit(feature_id(a));
    for (const auto& a : e.free_features) info.free |= bit(feature_id(a));
    info.constraint = compile(effective_constraint(e, grammar));
    for (const auto& s : e.slots) {
      SlotInfo si;
      si.slot = &s;
      si.dep = dep_id(s.dep_type);
      for (const auto& d : s.float_set) si.float_mask |= bit(dep_id(d));
      si.filler = compile(s.filler);
      info.slots.push_back(std::move(si));
    }
    entries_.push_back(std::move(info));
  }
}

const EntryInfo& CompiledGrammar::info(const LexEntry* entry) const {
  return entries_.at(static_cast<std::size_t>(entry - grammar_->entries.data()));
}

std::vector<const EntryInfo*> CompiledGrammar::lookup(const std::string& surface) const {
  std::vector<const EntryInfo*> out;
  for (const auto& e : entries_)
    if (e.entry->surface == surface) out.push_back(&e);
  return out;
}

int CompiledGrammar::feature_id(const std::string& name) const { return position_in(grammar_->features, name); }
int CompiledGrammar::class_id(const std::string& name) const { return position_in(grammar_->classes, name); }
int CompiledGrammar::dep_id(const std::string& name) const { return position_in(grammar_->dep_types, name); }

Compiled CompiledGrammar::compile(const Formula& f) const {
  Compiled c;
  c.kind = f.kind;
  c.index = f.index;
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Class: c.symbol = class_id(f.symbol); break;
    case K::Feature: c.symbol = feature_id(f.symbol); break;
    case K::Dep: c.symbol = dep_id(f.symbol); break;
    case K::PrecTypes:
    case K::FollTypes:
    case K::Float:
      for (const auto& s : f.symbols) c.mask |= bit(dep_id(s));
      break;
    case K::AllInDomain:
      for (const auto& s : f.symbols) c.mask |= bit(feature_id(s));
      break;
    default: break;
  }
  for (const auto& g : f.operands) c.operands.push_back(compile(g));
  return c;
}

// ---------------------------------------------------------------------------

Budget::Budget(std::size_t max_steps, std::chrono::milliseconds timeout) : max_steps_(max_steps) {
  if (timeout.count() > 0) deadline_ = std::chrono::steady_clock::now() + timeout;
}

bool Budget::tick() {
  if (exceeded_) return false;
  ++steps_;
  if (steps_ > max_steps_) exceeded_ = true;
  if (deadline_ && (steps_ & 255) == 0 && std::chrono::steady_clock::now() > *deadline_) exceeded_ = true;
  return !exceeded_;
}

// ---------------------------------------------------------------------------

Search::Search(const CompiledGrammar& grammar, std::vector<std::string> tokens, Budget& budget)
    : grammar_(&grammar), tokens_(std::move(tokens)), budget_(&budget), n_(static_cast<int>(tokens_.size())) {
  if (n_ > 64) throw SizeGuardError("sentences are limited to 64 tokens");
  required.assign(tokens_.size(), 0);
  for (const auto& t : tokens_) {
    auto opts = grammar.lookup(t);
    if (opts.empty()) throw LexicalGap(t);
    options_.push_back(std::move(opts));
  }
  entry_.assign(tokens_.size(), nullptr);
  head_.assign(tokens_.size(), kRoot);
  slot_.assign(tokens_.size(), -1);
  placed_.assign(tokens_.size(), 0);
  cont_.assign(tokens_.size(), 0);
  phead_.assign(tokens_.size(), kRoot);
  pidx_.assign(tokens_.size(), 1);
  feats_.assign(tokens_.size(), 0);
  feats_known_.assign(tokens_.size(), 0);
  std::vector<int> identity(tokens_.size());
  for (int i = 0; i < n_; ++i) identity[idx(i)] = i;
  set_order(identity);
}

int Search::dom(int owner, int index) const {
  return owner == kRoot ? root_dom_ : dom_base_[idx(owner)] + index - 1;
}

void Search::set_order(std::vector<int> positions) {
  pos_ = std::move(positions);
  at_.assign(pos_.size(), 0);
  for (int w = 0; w < n_; ++w) at_[static_cast<std::size_t>(pos_[idx(w)])] = w;
  order_known_ = true;
}

void Search::clear_order() { order_known_ = false; }

// --- entries -----------------------------------------------------------------

void Search::set_entries(std::vector<const EntryInfo*> entries) {
  entry_ = std::move(entries);
  layout_domains();
}

void Search::layout_domains() {
  dom_base_.assign(tokens_.size(), 0);
  dom_owner_.clear();
  dom_index_.clear();
  for (int w = 0; w < n_; ++w) {
    dom_base_[idx(w)] = static_cast<int>(dom_owner_.size());
    for (int i = 1; i <= entry(w).entry->domain_count; ++i) {
      dom_owner_.push_back(w);
      dom_index_.push_back(i);
    }
  }
  root_dom_ = static_cast<int>(dom_owner_.size());
  dom_owner_.push_back(kRoot);
  dom_index_.push_back(1);
  members_.assign(dom_owner_.size(), 0);
  members_[static_cast<std::size_t>(root_dom_)] = n_ == 64 ? ~std::uint64_t{0} : bit(n_) - 1;
}

bool Search::run_entries(const Leaf& on_entries) { return entries_rec(0, on_entries); }

bool Search::entries_rec(int i, const Leaf& leaf) {
  if (!budget_->tick()) return false;
  if (i == n_) {
    layout_domains();
    return leaf();
  }
  for (const EntryInfo* e : options_[idx(i)]) {
    if ((required[idx(i)] & ~(e->fixed | e->free)) != 0) continue;
    entry_[idx(i)] = e;
    if (!entries_rec(i + 1, leaf)) return false;
  }
  entry_[idx(i)] = nullptr;
  return true;
}

// --- tree --------------------------------------------------------------------

int Search::dep_of(int w) const {
  int h = head_[idx(w)];
  if (h == kRoot) return -1;
  return entry(h).slots[static_cast<std::size_t>(slot_[idx(w)])].dep;
}

const SlotInfo* Search::slot_info(int w) const {
  int h = head_[idx(w)];
  if (h == kRoot) return nullptr;
  return &entry(h).slots[static_cast<std::size_t>(slot_[idx(w)])];
}

bool Search::run_tree(const Leaf& on_tree) {
  clear_tree();
  candidates_.assign(tokens_.size(), {});
  type_mask_.assign(tokens_.size(), 0);
  for (int i = 0; i < n_; ++i) {
    auto& c = candidates_[idx(i)];
    c.emplace_back(kRoot, -1);
    for (int h = 0; h < n_; ++h) {
      if (h == i) continue;
      const auto& slots = entry(h).slots;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (eval(i, slots[s].filler) == Tri::False) continue;
        c.emplace_back(h, static_cast<int>(s));
        type_mask_[idx(i)] |= bit(slots[s].dep);
      }
    }
  }
  if (!tree_feasible(0)) return true;
  return tree_rec(0, on_tree);
}

void Search::clear_tree() {
  head_.assign(tokens_.size(), kRoot);
  slot_.assign(tokens_.size(), -1);
  slot_count_.assign(tokens_.size(), {});
  for (int w = 0; w < n_; ++w) slot_count_[idx(w)].assign(entry(w).slots.size(), 0);
  children_.assign(tokens_.size(), {});
  order_.clear();
  root_ = kRoot;
  tree_complete_ = false;
}

bool Search::creates_cycle(int i, int h) const {
  int x = h;
  for (;;) {
    if (x == i) return true;
    if (x == kRoot || x > i) return false;
    x = head_[idx(x)];
  }
}

bool Search::tree_feasible(int next) const {
  const int ndeps = static_cast<int>(grammar_->grammar().dep_types.size());
  int total_need = 0;
  for (int d = 0; d < ndeps; ++d) {
    int need = 0;
    for (int h = 0; h < n_; ++h) {
      const auto& slots = entry(h).slots;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (slots[s].dep == d) need += std::max(0, slots[s].slot->min - slot_count_[idx(h)][s]);
    }
    if (need == 0) continue;
    int avail = 0;
    for (int j = next; j < n_; ++j) avail += (type_mask_[idx(j)] & bit(d)) ? 1 : 0;
    if (need > avail) return false;
    total_need += need;
  }
  return total_need <= n_ - next;
}

bool Search::tree_rec(int i, const Leaf& leaf) {
  if (!budget_->tick()) return false;
  if (i == n_) return finish_tree(leaf);
  for (auto [h, s] : candidates_[idx(i)]) {
    if (h == kRoot) {
      if (root_ != kRoot) continue;
      root_ = i;
      head_[idx(i)] = kRoot;
      slot_[idx(i)] = -1;
      bool ok = !tree_feasible(i + 1) || tree_rec(i + 1, leaf);
      root_ = kRoot;
      if (!ok) return false;
      continue;
    }
    auto& count = slot_count_[idx(h)][static_cast<std::size_t>(s)];
    if (count >= entry(h).slots[static_cast<std::size_t>(s)].slot->max) continue;
    if (creates_cycle(i, h)) continue;
    head_[idx(i)] = h;
    slot_[idx(i)] = s;
    ++count;
    bool ok = !tree_feasible(i + 1) || tree_rec(i + 1, leaf);
    --count;
    head_[idx(i)] = kRoot;
    slot_[idx(i)] = -1;
    if (!ok) return false;
  }
  return true;
}

bool Search::set_tree(const std::vector<int>& heads, const std::vector<int>& slots) {
  clear_tree();
  for (int w = 0; w < n_; ++w) {
    int h = heads[idx(w)];
    head_[idx(w)] = h;
    slot_[idx(w)] = slots[idx(w)];
    if (h == kRoot) {
      if (root_ != kRoot) return false;
      root_ = w;
      continue;
    }
    auto s = static_cast<std::size_t>(slots[idx(w)]);
    if (s >= entry(h).slots.size()) return false;
    ++slot_count_[idx(h)][s];
  }
  if (root_ == kRoot) return false;
  for (int h = 0; h < n_; ++h) {
    const auto& sl = entry(h).slots;
    for (std::size_t s = 0; s < sl.size(); ++s) {
      int c = slot_count_[idx(h)][s];
      if (c < sl[s].slot->min || c > sl[s].slot->max) return false;
    }
  }
  complete_tree();
  return static_cast<int>(order_.size()) == n_;
}

void Search::complete_tree() {
  children_.assign(tokens_.size(), {});
  for (int w = 0; w < n_; ++w)
    if (head_[idx(w)] != kRoot) children_[idx(head_[idx(w)])].push_back(w);
  order_.clear();
  if (root_ != kRoot) {
    order_.push_back(root_);
    for (std::size_t k = 0; k < order_.size() && order_.size() <= tokens_.size(); ++k)
      for (int c : children_[idx(order_[k])]) order_.push_back(c);
  }
  tree_complete_ = true;
}

bool Search::finish_tree(const Leaf& leaf) {
  if (root_ == kRoot) return true;
  for (int h = 0; h < n_; ++h) {
    const auto& sl = entry(h).slots;
    for (std::size_t s = 0; s < sl.size(); ++s)
      if (slot_count_[idx(h)][s] < sl[s].slot->min) return true;
  }
  complete_tree();
  bool ok = true;
  if (constraints_possible()) ok = leaf();
  tree_complete_ = false;
  return ok;
}

// --- placements ----------------------------------------------------------------

bool Search::run_placements(const Leaf& on_placed) {
  std::fill(placed_.begin(), placed_.end(), 0);
  placed_count_ = 0;
  for (int d = 0; d < root_dom_; ++d) members_[static_cast<std::size_t>(d)] = 0;
  return place_rec(0, on_placed);
}

bool Search::place_rec(std::size_t k, const Leaf& leaf) {
  if (!budget_->tick()) return false;
  if (k == order_.size()) return leaf();
  const int w = order_[k];
  const std::uint64_t me = bit(w);

  std::vector<int> heads;
  if (w == root_) {
    heads.push_back(kRoot);
  } else {
    const std::uint64_t floats = slot_info(w)->float_mask;
    int x = head_[idx(w)];
    for (;;) {
      heads.push_back(x);
      if (x == root_) break;
      if (!(floats & bit(dep_of(x)))) break;
      x = head_[idx(x)];
    }
  }

  std::vector<int> touched;
  for (int c = 1; c <= entry(w).entry->domain_count; ++c) {
    for (int ph : heads) {
      const int count = ph == kRoot ? 1 : entry(ph).entry->domain_count;
      for (int j = 1; j <= count; ++j) {
        touched.clear();
        touched.push_back(dom(w, c));
        for (int d = dom(ph, j); d != root_dom_;) {
          touched.push_back(d);
          int o = dom_owner_[static_cast<std::size_t>(d)];
          d = placement_dom(o);
        }
        for (int d : touched) members_[static_cast<std::size_t>(d)] |= me;
        placed_[idx(w)] = 1;
        cont_[idx(w)] = c;
        phead_[idx(w)] = ph;
        pidx_[idx(w)] = j;
        ++placed_count_;

        bool ok = true;
        if ((!order_known_ || structure_possible()) && constraints_possible()) ok = place_rec(k + 1, leaf);

        --placed_count_;
        placed_[idx(w)] = 0;
        for (int d : touched) members_[static_cast<std::size_t>(d)] &= ~me;
        if (!ok) return false;
      }
    }
  }
  return true;
}

bool Search::structure_possible() const {
  for (int d = 0; d < root_dom_; ++d) {
    std::uint64_t m = members_[static_cast<std::size_t>(d)];
    if (std::popcount(m) < 2) continue;
    int lo = n_;
    int hi = -1;
    for (std::uint64_t r = m; r; r &= r - 1) {
      int p = pos_[idx(std::countr_zero(r))];
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    for (int p = lo + 1; p < hi; ++p) {
      int v = at_[static_cast<std::size_t>(p)];
      if (placed_[idx(v)] && !(m & bit(v))) return false;
    }
  }
  for (int o = 0; o < n_; ++o) {
    int prev_hi = -1;
    for (int i = 1; i <= entry(o).entry->domain_count; ++i) {
      std::uint64_t m = members_[static_cast<std::size_t>(dom(o, i))];
      if (!m) continue;
      int lo = n_;
      int hi = -1;
      for (std::uint64_t r = m; r; r &= r - 1) {
        int p = pos_[idx(std::countr_zero(r))];
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
      if (lo < prev_hi) return false;
      prev_hi = hi;
    }
  }
  return true;
}

// --- features ----------------------------------------------------------------

bool Search::run_features(const Leaf& on_complete) {
  std::fill(feats_known_.begin(), feats_known_.end(), 0);
  return feature_rec(0, on_complete);
}

bool Search::feature_rec(int i, const Leaf& leaf) {
  if (!budget_->tick()) return false;
  if (i == n_) return constraints_hold() ? leaf() : true;
  const EntryInfo& e = entry(i);
  const std::uint64_t must = required[idx(i)] & e.free;
  feats_known_[idx(i)] = 1;
  bool ok = true;
  for (std::uint64_t sub = 0;; sub = (sub - e.free) & e.free) {
    if ((sub & must) == must) {
      feats_[idx(i)] = e.fixed | sub;
      if (constraints_possible() && !feature_rec(i + 1, leaf)) {
        ok = false;
        break;
      }
    }
    if (sub == e.free) break;
  }
  feats_known_[idx(i)] = 0;
  return ok;
}

// --- evaluation ----------------------------------------------------------------

bool Search::constraints_possible() const {
  for (int w = 0; w < n_; ++w) {
    if (eval(w, entry(w).constraint) == Tri::False) return false;
    if (tree_complete_ && head_[idx(w)] != kRoot && eval(w, slot_info(w)->filler) == Tri::False) return false;
  }
  return true;
}

bool Search::constraints_hold() const {
  for (int w = 0; w < n_; ++w) {
    if (eval(w, entry(w).constraint) != Tri::True) return false;
    if (head_[idx(w)] != kRoot && eval(w, slot_info(w)->filler) != Tri::True) return false;
  }
  return true;
}

Tri Search::feature(int w, int b) const {
  const EntryInfo& e = entry(w);
  if (e.fixed & bit(b)) return Tri::True;
  if (!(e.free & bit(b))) return Tri::False;
  if (!feats_known_[idx(w)]) return Tri::Unknown;
  return (feats_[idx(w)] & bit(b)) ? Tri::True : Tri::False;
}

Tri Search::eval(int w, const Compiled& f) const {
  using K = Formula::Kind;
  auto owned = [&](int i) {
    if (i < 1 || i > entry(w).entry->domain_count)
      throw EvaluationError("domain index " + std::to_string(i) + " exceeds the " +
                            std::to_string(entry(w).entry->domain_count) + " domain(s) of \"" + tokens_[idx(w)] + "\"");
    return members_[static_cast<std::size_t>(dom(w, i))];
  };
  switch (f.kind) {
    case K::Class: return entry(w).class_id == f.symbol ? Tri::True : Tri::False;
    case K::Feature: return feature(w, f.symbol);
    case K::Dep: {
      if (!tree_complete_) return Tri::Unknown;
      Tri r = Tri::False;
      for (int v : children_[idx(w)])
        if (dep_of(v) == f.symbol) {
          r = kleene_or(r, eval(v, f.operands[0]));
          if (r == Tri::True) break;
        }
      return r;
    }
    case K::PrecAll:
    case K::FollAll: {
      if (!order_known_ || !placed_[idx(w)]) return Tri::Unknown;
      const bool before = f.kind == K::PrecAll;
      std::uint64_t m = members_[static_cast<std::size_t>(dom(w, cont_[idx(w)]))];
      bool open = false;
      for (int v = 0; v < n_; ++v) {
        if (v == w || (before ? pos_[idx(v)] > pos_[idx(w)] : pos_[idx(v)] < pos_[idx(w)])) continue;
        if (m & bit(v)) return Tri::False;
        if (!placed_[idx(v)]) open = true;
      }
      return open ? Tri::Unknown : Tri::True;
    }
    case K::PrecTypes:
    case K::FollTypes: {
      if (!order_known_ || !placed_[idx(w)] || !tree_complete_) return Tri::Unknown;
      const bool before = f.kind == K::PrecTypes;
      const int scope = placement_dom(w);
      std::uint64_t m = members_[static_cast<std::size_t>(scope)];
      bool open = false;
      for (int v = 0; v < n_; ++v) {
        if (v == w || (before ? pos_[idx(v)] > pos_[idx(w)] : pos_[idx(v)] < pos_[idx(w)])) continue;
        int t = dep_of(v);
        if (t < 0 || !(f.mask & bit(t))) continue;
        if (m & bit(v)) return Tri::False;
        if (!placed_[idx(v)]) open = true;
      }
      return open ? Tri::Unknown : Tri::True;
    }
    case K::Float: {
      if (!placed_[idx(w)] || !tree_complete_) return Tri::Unknown;
      if (w == root_) return Tri::True;
      int x = head_[idx(w)];
      while (x != phead_[idx(w)]) {
        if (x == kRoot || x == root_) return Tri::False;
        if (!(f.mask & bit(dep_of(x)))) return Tri::False;
        x = head_[idx(x)];
      }
      return Tri::True;
    }
    case K::Single: {
      std::uint64_t m = owned(f.index);
      if (!tree_complete_) return Tri::Unknown;
      int certain = 0;
      for (std::uint64_t r = m; r; r &= r - 1) {
        int v = std::countr_zero(r);
        int h = head_[idx(v)];
        if (h == kRoot || (placed_[idx(h)] && !(m & bit(h)))) ++certain;
      }
      if (certain >= 2) return Tri::False;
      return all_placed() ? Tri::True : Tri::Unknown;
    }
    case K::Filled: {
      std::uint64_t m = owned(f.index);
      if (m) return Tri::True;
      return all_placed() ? Tri::False : Tri::Unknown;
    }
    case K::AllInDomain: {
      std::uint64_t m = owned(f.index);
      bool unknown = !all_placed();
      for (std::uint64_t r = m; r; r &= r - 1) {
        int v = std::countr_zero(r);
        for (std::uint64_t a = f.mask; a; a &= a - 1) {
          Tri t = feature(v, std::countr_zero(a));
          if (t == Tri::False) return Tri::False;
          if (t == Tri::Unknown) unknown = true;
        }
      }
      return unknown ? Tri::Unknown : Tri::True;
    }
    case K::And: {
      Tri r = Tri::True;
      for (const auto& g : f.operands) {
        r = kleene_and(r, eval(w, g));
        if (r == Tri::False) break;
      }
      return r;
    }
    case K::Not: return kleene_not(eval(w, f.operands[0]));
  }
  return Tri::Unknown;
}

// --- output --------------------------------------------------------------------

DependencyStructure Search::build() const {
  const auto& g = grammar_->grammar();
  std::vector<Word> words(tokens_.size());
  for (int w = 0; w < n_; ++w) {
    Word& out = words[static_cast<std::size_t>(pos_[idx(w)])];
    out.id = pos_[idx(w)];
    out.surface = tokens_[idx(w)];
    out.word_class = entry(w).entry->word_class;
    out.domain_count = entry(w).entry->domain_count;
    std::uint64_t f = feats_known_[idx(w)] ? feats_[idx(w)] : entry(w).fixed;
    for (std::uint64_t r = f; r; r &= r - 1) out.features.push_back(g.features[static_cast<std::size_t>(std::countr_zero(r))]);
  }
  std::vector<DependencyEdge> edges;
  for (int w = 0; w < n_; ++w)
    if (head_[idx(w)] != kRoot)
      edges.push_back({pos_[idx(head_[idx(w)])], pos_[idx(w)], g.dep_types[static_cast<std::size_t>(dep_of(w))]});
  std::vector<DomainNode> domains;
  for (int d = 0; d < root_dom_; ++d) {
    DomainNode node{pos_[idx(dom_owner_[static_cast<std::size_t>(d)])], dom_index_[static_cast<std::size_t>(d)], {}};
    for (std::uint64_t r = members_[static_cast<std::size_t>(d)]; r; r &= r - 1)
      node.members.push_back(pos_[idx(std::countr_zero(r))]);
    domains.push_back(std::move(node));
  }
  return DependencyStructure(std::move(words), root_ == kRoot ? 0 : pos_[idx(root_)], std::move(edges), std::move(domains));
}

}  // namespace ordlog::detail
