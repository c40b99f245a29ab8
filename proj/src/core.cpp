#include "ordlog/core.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ordlog/errors.hpp"

namespace ordlog {
namespace {

std::string word_label(const DependencyStructure& s, int w) {
  return "w" + std::to_string(w) + " \"" + s.word(w).surface + "\"";
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

}  // namespace

bool Word::has_feature(std::string_view feature) const {
  return std::binary_search(features.begin(), features.end(), feature);
}

bool DomainNode::contains(int word) const {
  return std::binary_search(members.begin(), members.end(), word);
}

std::string describe(DomainRef ref) {
  if (ref.owner == kRoot) return "(ROOT)";
  return "(" + std::to_string(ref.owner) + " " + std::to_string(ref.index) + ")";
}

std::string_view clause_name(Clause clause) {
  switch (clause) {
    case Clause::Tree: return "tree";
    case Clause::Convexity: return "convexity";
    case Clause::Nesting: return "nesting";
    case Clause::SelfContainment: return "self-containment";
    case Clause::DisjointSequence: return "disjoint-sequence";
    case Clause::HeadContainment: return "head-containment";
    case Clause::SequenceOrder: return "sequence-order";
    case Clause::Closure: return "closure";
  }
  return "unknown";
}

DependencyStructure::DependencyStructure(std::vector<Word> words, int root,
                                         std::vector<DependencyEdge> edges,
                                         std::vector<DomainNode> domains)
    : words_(std::move(words)), root_(root), edges_(std::move(edges)) {
  const int n = static_cast<int>(words_.size());
  auto check_word = [n](int w, const char* what) {
    if (w < 0 || w >= n) throw MalformedInput(std::string(what) + " " + std::to_string(w) + " does not name a word");
  };
  for (int i = 0; i < n; ++i) {
    Word& w = words_[static_cast<std::size_t>(i)];
    if (w.id != i) throw MalformedInput("word ids must equal sentence positions (word " + std::to_string(i) + " has id " + std::to_string(w.id) + ")");
    if (w.domain_count < 1) throw MalformedInput("word " + std::to_string(i) + " declares fewer than one domain");
    std::sort(w.features.begin(), w.features.end());
    w.features.erase(std::unique(w.features.begin(), w.features.end()), w.features.end());
  }
  if (n > 0) check_word(root_, "root");
  for (const auto& e : edges_) {
    check_word(e.head, "edge head");
    check_word(e.dependent, "edge dependent");
  }
  std::sort(edges_.begin(), edges_.end(), [](const DependencyEdge& a, const DependencyEdge& b) {
    return std::tie(a.head, a.dependent, a.dep_type) < std::tie(b.head, b.dependent, b.dep_type);
  });

  std::map<DomainRef, DomainNode> by_ref;
  for (auto& d : domains) {
    check_word(d.owner, "domain owner");
    const Word& owner = words_[static_cast<std::size_t>(d.owner)];
    if (d.index < 1 || d.index > owner.domain_count)
      throw MalformedInput("domain index " + std::to_string(d.index) + " out of range for word " + std::to_string(d.owner));
    for (int m : d.members) check_word(m, "domain member");
    std::sort(d.members.begin(), d.members.end());
    if (std::adjacent_find(d.members.begin(), d.members.end()) != d.members.end())
      throw MalformedInput("domain " + describe(d.ref()) + " lists a member twice");
    if (!by_ref.emplace(d.ref(), d).second) throw MalformedInput("domain " + describe(d.ref()) + " defined twice");
  }
  for (const Word& w : words_) {
    first_domain_.push_back(domains_.size());
    for (int i = 1; i <= w.domain_count; ++i) {
      auto it = by_ref.find({w.id, i});
      domains_.push_back(it != by_ref.end() ? std::move(it->second) : DomainNode{w.id, i, {}});
    }
  }
  first_domain_.push_back(domains_.size());
  root_domain_ = DomainNode{kRoot, 1, {}};
  for (int i = 0; i < n; ++i) root_domain_.members.push_back(i);
}

DomainNode DependencyStructure::root_domain() const { return root_domain_; }

const DomainNode& DependencyStructure::domain(DomainRef ref) const {
  if (ref == kRootDomain) return root_domain_;
  if (ref.owner < 0 || ref.owner >= static_cast<int>(words_.size()))
    throw MalformedInput("no domain " + describe(ref));
  auto own = domains_of(ref.owner);
  if (ref.index < 1 || ref.index > static_cast<int>(own.size())) throw MalformedInput("no domain " + describe(ref));
  return own[static_cast<std::size_t>(ref.index - 1)];
}

std::span<const DomainNode> DependencyStructure::domains_of(int owner) const {
  auto o = static_cast<std::size_t>(owner);
  return std::span<const DomainNode>(domains_).subspan(first_domain_.at(o), first_domain_.at(o + 1) - first_domain_[o]);
}

// ---------------------------------------------------------------------------

std::size_t DomainTree::index_of(DomainRef ref) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].ref() == ref) return i;
  throw MalformedInput("no domain " + describe(ref));
}

StructureIndex::StructureIndex(const DependencyStructure& s) : structure_(&s) {
  const int n = static_cast<int>(s.size());
  heads_.assign(s.size(), kRoot);
  types_.assign(s.size(), std::string());
  dependents_.assign(s.size(), {});
  for (const auto& e : s.edges()) {
    auto d = idx(e.dependent);
    if (heads_[d] == kRoot && e.dependent != s.root()) {
      heads_[d] = e.head;
      types_[d] = e.dep_type;
    }
    dependents_[idx(e.head)].push_back(e.dependent);
  }
  depths_.assign(s.size(), n);
  for (int w = 0; w < n; ++w) {
    int steps = 0;
    int x = w;
    while (x != kRoot && steps <= n) {
      if (x == s.root()) break;
      x = heads_[idx(x)];
      ++steps;
    }
    if (x == s.root() && steps <= n) depths_[idx(w)] = steps;
  }

  // Domain tree.
  tree_.nodes_.push_back(s.root_domain());
  for (const auto& d : s.domains()) tree_.nodes_.push_back(d);
  const auto& nodes = tree_.nodes_;
  const std::size_t count = nodes.size();
  for (std::size_t a = 1; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      const auto& x = nodes[a].members;
      const auto& y = nodes[b].members;
      if (intersects(x, y) && !is_subset(x, y) && !is_subset(y, x))
        throw ValidationError("domains " + describe(nodes[a].ref()) + " and " + describe(nodes[b].ref()) +
                              " overlap without inclusion");
    }
  auto key = [&](std::size_t i) {
    int owner = nodes[i].owner;
    return std::make_tuple(owner == kRoot ? -1 : depth(owner), owner, nodes[i].index);
  };
  tree_.parents_.assign(count, -1);
  for (std::size_t x = 1; x < count; ++x) {
    if (nodes[x].empty()) continue;
    int best = -1;
    for (std::size_t e = 0; e < count; ++e) {
      if (e == x || !is_subset(nodes[x].members, nodes[e].members)) continue;
      bool equal = nodes[e].members.size() == nodes[x].members.size();
      if (equal && !(key(e) < key(x))) continue;
      if (best < 0) {
        best = static_cast<int>(e);
        continue;
      }
      auto b = static_cast<std::size_t>(best);
      if (nodes[e].members.size() < nodes[b].members.size() ||
          (nodes[e].members.size() == nodes[b].members.size() && key(b) < key(e)))
        best = static_cast<int>(e);
    }
    tree_.parents_[x] = best;
  }
  for (std::size_t x = 1; x < count; ++x) {
    if (!nodes[x].empty()) continue;
    int c = containing_node(nodes[x].owner);
    tree_.parents_[x] = (c >= 0 && tree_.parents_[static_cast<std::size_t>(c)] >= 0) ? tree_.parents_[static_cast<std::size_t>(c)] : 0;
  }
  tree_.children_.assign(count, {});
  for (std::size_t x = 1; x < count; ++x) tree_.children_[static_cast<std::size_t>(tree_.parents_[x])].push_back(static_cast<int>(x));
}

int StructureIndex::depth(int word) const { return word == kRoot ? -1 : depths_[idx(word)]; }

bool StructureIndex::dominates(int ancestor, int word) const {
  if (ancestor == kRoot) return word != kRoot;
  const int n = static_cast<int>(heads_.size());
  int x = word;
  for (int steps = 0; steps <= n && x != kRoot; ++steps) {
    if (x == structure_->root()) return false;
    x = heads_[idx(x)];
    if (x == ancestor) return true;
  }
  return false;
}

int StructureIndex::containing_node(int word) const {
  // Tree nodes 1.. mirror structure.domains(), grouped by owner.
  const auto& all = structure_->domains();
  auto own = structure_->domains_of(word);
  int found = -1;
  for (const auto& d : own) {
    if (!d.contains(word)) continue;
    if (found >= 0) return -1;
    found = static_cast<int>(&d - all.data()) + 1;
  }
  return found;
}

const DomainNode& StructureIndex::containing_domain(int word) const {
  int c = containing_node(word);
  if (c < 0)
    throw ValidationError("self-containment: word " + std::to_string(word) + " is not in exactly one of its own domains");
  return tree_.node(static_cast<std::size_t>(c));
}

Placement StructureIndex::places(int word) const {
  int c = containing_node(word);
  if (c < 0)
    throw ValidationError("self-containment: word " + std::to_string(word) + " is not in exactly one of its own domains");
  const DomainNode& parent = tree_.node(static_cast<std::size_t>(tree_.parent(static_cast<std::size_t>(c))));
  Placement p{parent.owner, parent.ref()};
  bool ok = word == structure_->root() ? p.positional_head == kRoot
                                       : (p.positional_head != kRoot && dominates(p.positional_head, word));
  if (!ok)
    throw ValidationError("head-containment: word " + std::to_string(word) + " is placed in " + describe(p.domain) +
                          ", which is not owned by a transitive head");
  return p;
}

std::vector<int> StructureIndex::maximal_members(DomainRef ref) const {
  const DomainNode& d = structure_->domain(ref);
  std::vector<int> out;
  for (int m : d.members) {
    int h = head(m);
    if (h == kRoot || !d.contains(h)) out.push_back(m);
  }
  return out;
}

DomainTree domain_tree(const DependencyStructure& structure) { return StructureIndex(structure).tree(); }

const DomainNode& containing_domain(const DependencyStructure& structure, int word) {
  return structure.domain(StructureIndex(structure).containing_domain(word).ref());
}

Placement places(const DependencyStructure& structure, int word) { return StructureIndex(structure).places(word); }

std::vector<int> maximal_members(const DependencyStructure& structure, DomainRef domain) {
  return StructureIndex(structure).maximal_members(domain);
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate(const DependencyStructure& s) {
  std::vector<Violation> out;
  const int n = static_cast<int>(s.size());
  auto report = [&](Clause c, std::string msg, std::vector<int> words, std::vector<DomainRef> domains = {}) {
    out.push_back({c, std::string(clause_name(c)) + ": " + msg, std::move(words), std::move(domains)});
  };
  if (n == 0) {
    report(Clause::Tree, "structure has no words", {});
    return out;
  }

  // Tree: one head per non-root word, none for the root, everything reachable.
  bool tree_ok = true;
  std::vector<int> head_count(s.size(), 0);
  for (const auto& e : s.edges()) {
    if (e.head == e.dependent) {
      report(Clause::Tree, word_label(s, e.head) + " heads itself", {e.head});
      tree_ok = false;
    }
    ++head_count[static_cast<std::size_t>(e.dependent)];
  }
  for (int w = 0; w < n; ++w) {
    int c = head_count[static_cast<std::size_t>(w)];
    if (w == s.root() && c != 0) {
      report(Clause::Tree, "root " + word_label(s, w) + " has a head", {w});
      tree_ok = false;
    } else if (w != s.root() && c != 1) {
      report(Clause::Tree, word_label(s, w) + " has " + std::to_string(c) + " heads", {w});
      tree_ok = false;
    }
  }
  if (tree_ok) {
    std::vector<bool> seen(s.size(), false);
    std::vector<int> stack{s.root()};
    seen[static_cast<std::size_t>(s.root())] = true;
    while (!stack.empty()) {
      int h = stack.back();
      stack.pop_back();
      for (const auto& e : s.edges())
        if (e.head == h && !seen[static_cast<std::size_t>(e.dependent)]) {
          seen[static_cast<std::size_t>(e.dependent)] = true;
          stack.push_back(e.dependent);
        }
    }
    for (int w = 0; w < n; ++w)
      if (!seen[static_cast<std::size_t>(w)]) {
        report(Clause::Tree, word_label(s, w) + " is not reachable from the root", {w});
        tree_ok = false;
      }
  }

  for (const auto& d : s.domains()) {
    if (d.members.size() < 2) continue;
    for (int w = d.members.front(); w <= d.members.back(); ++w)
      if (!d.contains(w)) report(Clause::Convexity, "domain " + describe(d.ref()) + " skips " + word_label(s, w), {w}, {d.ref()});
  }

  bool nesting_ok = true;
  const auto& ds = s.domains();
  for (std::size_t a = 0; a < ds.size(); ++a)
    for (std::size_t b = a + 1; b < ds.size(); ++b) {
      const auto& x = ds[a].members;
      const auto& y = ds[b].members;
      if (intersects(x, y) && !is_subset(x, y) && !is_subset(y, x)) {
        report(Clause::Nesting, "domains " + describe(ds[a].ref()) + " and " + describe(ds[b].ref()) + " overlap without inclusion",
               {}, {ds[a].ref(), ds[b].ref()});
        nesting_ok = false;
      }
    }

  std::vector<bool> self_ok(s.size(), true);
  for (int w = 0; w < n; ++w) {
    int c = 0;
    for (const auto& d : s.domains_of(w)) c += d.contains(w) ? 1 : 0;
    if (c != 1) {
      self_ok[static_cast<std::size_t>(w)] = false;
      report(Clause::SelfContainment, word_label(s, w) + " lies in " + std::to_string(c) + " of its own domains", {w});
    }
  }

  for (int w = 0; w < n; ++w) {
    auto own = s.domains_of(w);
    for (std::size_t i = 0; i < own.size(); ++i)
      for (std::size_t j = i + 1; j < own.size(); ++j) {
        if (intersects(own[i].members, own[j].members))
          report(Clause::DisjointSequence, "domains " + describe(own[i].ref()) + " and " + describe(own[j].ref()) + " share members",
                 {w}, {own[i].ref(), own[j].ref()});
        if (!own[i].empty() && !own[j].empty() && own[j].members.front() < own[i].members.back())
          report(Clause::SequenceOrder, "a member of " + describe(own[j].ref()) + " precedes a member of " + describe(own[i].ref()),
                 {w}, {own[i].ref(), own[j].ref()});
      }
  }

  for (const auto& d : s.domains())
    for (int m : d.members) {
      if (m == d.owner) continue;
      for (const auto& inner : s.domains_of(m))
        if (!is_subset(inner.members, d.members))
          report(Clause::Closure, word_label(s, m) + " is in " + describe(d.ref()) + " but its domain " + describe(inner.ref()) + " is not",
                 {m}, {d.ref(), inner.ref()});
    }

  if (tree_ok && nesting_ok) {
    StructureIndex index(s);
    for (int w = 0; w < n; ++w) {
      if (!self_ok[static_cast<std::size_t>(w)]) continue;
      try {
        (void)index.places(w);
      } catch (const ValidationError&) {
        const auto& c = index.containing_domain(w);
        const auto& tree = index.tree();
        const auto& parent = tree.node(static_cast<std::size_t>(tree.parent(tree.index_of(c.ref()))));
        report(Clause::HeadContainment,
               word_label(s, w) + " sits in " + describe(parent.ref()) + ", which is not owned by a transitive head",
               {w}, {c.ref(), parent.ref()});
      }
    }
  }
  return out;
}

}  // namespace ordlog
