// Reference semantics for the parser: enumerate every candidate and keep those that pass
// validate() and satisfies(). Deliberately shares no code with the search engine.

#include <algorithm>
#include <map>

#include "ordlog/errors.hpp"
#include "ordlog/logic.hpp"
#include "ordlog/parser.hpp"

namespace ordlog {
namespace {

struct Typed {
  int head;
  std::size_t slot;  // index in the head entry's slots
};

/// Odometer over per-position choice counts; false when it wraps around.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

std::vector<std::vector<std::string>> feature_choices(const LexEntry& e, const std::vector<std::string>& required) {
  std::vector<std::vector<std::string>> out;
  const std::size_t k = e.free_features.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::string> feats = e.fixed_features;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (std::size_t{1} << b)) feats.push_back(e.free_features[b]);
    std::sort(feats.begin(), feats.end());
    bool ok = std::all_of(required.begin(), required.end(),
                          [&](const std::string& r) { return std::binary_search(feats.begin(), feats.end(), r); });
    if (ok) out.push_back(std::move(feats));
  }
  return out;
}

class BruteForce {
 public:
  explicit BruteForce(const ParseTask& task) : task_(task), g_(*task.grammar), n_(static_cast<int>(task.tokens.size())) {}

  std::vector<DependencyStructure> run() {
    std::vector<std::vector<const LexEntry*>> options;
    for (const auto& t : task_.tokens) options.push_back(lookup(g_, t));
    std::vector<std::size_t> radix;
    for (const auto& o : options) radix.push_back(o.size());
    std::vector<std::size_t> pick(options.size(), 0);
    do {
      entries_.clear();
      for (std::size_t i = 0; i < options.size(); ++i) entries_.push_back(options[i][pick[i]]);
      enumerate_trees();
    } while (advance(pick, radix));

    std::vector<DependencyStructure> out;
    for (auto& [key, s] : found_) out.push_back(std::move(s));
    return out;
  }

 private:
  const LexEntry& entry(int w) const { return *entries_[static_cast<std::size_t>(w)]; }

  void enumerate_trees() {
    // Each word chooses ROOT or a (head, slot) pair among all other words.
    std::vector<std::vector<Typed>> choices(entries_.size());
    for (int w = 0; w < n_; ++w) {
      choices[static_cast<std::size_t>(w)].push_back({kRoot, 0});
      for (int h = 0; h < n_; ++h)
        if (h != w)
          for (std::size_t s = 0; s < entry(h).slots.size(); ++s) choices[static_cast<std::size_t>(w)].push_back({h, s});
    }
    std::vector<std::size_t> radix;
    for (const auto& c : choices) radix.push_back(c.size());
    std::vector<std::size_t> pick(choices.size(), 0);
    do {
      tree_.clear();
      for (std::size_t i = 0; i < choices.size(); ++i) tree_.push_back(choices[i][pick[i]]);
      if (is_tree() && slots_respected()) enumerate_placements();
    } while (advance(pick, radix));
  }

  bool is_tree() {
    root_ = kRoot;
    for (int w = 0; w < n_; ++w)
      if (tree_[static_cast<std::size_t>(w)].head == kRoot) {
        if (root_ != kRoot) return false;
        root_ = w;
      }
    if (root_ == kRoot) return false;
    for (int w = 0; w < n_; ++w) {
      int x = w;
      for (int steps = 0; x != kRoot; ++steps) {
        if (steps > n_) return false;
        x = tree_[static_cast<std::size_t>(x)].head;
      }
    }
    return true;
  }

  bool slots_respected() const {
    for (int h = 0; h < n_; ++h)
      for (std::size_t s = 0; s < entry(h).slots.size(); ++s) {
        int c = 0;
        for (int w = 0; w < n_; ++w) c += (tree_[static_cast<std::size_t>(w)].head == h && tree_[static_cast<std::size_t>(w)].slot == s);
        if (c < entry(h).slots[s].min || c > entry(h).slots[s].max) return false;
      }
    return true;
  }

  std::vector<int> proper_ancestors(int w) const {
    std::vector<int> out;
    for (int x = tree_[static_cast<std::size_t>(w)].head; x != kRoot; x = tree_[static_cast<std::size_t>(x)].head) out.push_back(x);
    return out;
  }

  // Proper ancestors reachable from the direct head across the slot's float types only.
  std::vector<int> licensed_heads(int w) const {
    const Typed& t = tree_[static_cast<std::size_t>(w)];
    const auto& floats = entry(t.head).slots[t.slot].float_set;
    std::vector<int> out;
    for (int x : proper_ancestors(w)) {
      out.push_back(x);
      if (x == root_ || !std::binary_search(floats.begin(), floats.end(), type_into(x))) break;
    }
    return out;
  }

  const std::string& type_into(int w) const {
    const Typed& t = tree_[static_cast<std::size_t>(w)];
    return entry(t.head).slots[t.slot].dep_type;
  }

  struct Choice {
    int cont;
    int head;
    int index;
  };

  void enumerate_placements() {
    std::vector<std::vector<Choice>> choices(entries_.size());
    for (int w = 0; w < n_; ++w) {
      auto& c = choices[static_cast<std::size_t>(w)];
      std::vector<int> heads = w == root_ ? std::vector<int>{kRoot} : licensed_heads(w);
      for (int cont = 1; cont <= entry(w).domain_count; ++cont)
        for (int h : heads)
          for (int j = 1; j <= (h == kRoot ? 1 : entry(h).domain_count); ++j) c.push_back({cont, h, j});
    }
    std::vector<std::size_t> radix;
    for (const auto& c : choices) radix.push_back(c.size());
    std::vector<std::size_t> pick(choices.size(), 0);
    do {
      std::vector<Choice> placement;
      for (std::size_t i = 0; i < choices.size(); ++i) placement.push_back(choices[i][pick[i]]);
      check_placement(placement);
    } while (advance(pick, radix));
  }

  void check_placement(const std::vector<Choice>& placement) {
    // Memberships by upward closure: a word sits in its own containing domain, in the
    // domain it is placed in, and in every domain that one is (transitively) placed in.
    std::map<DomainRef, std::vector<int>> members;
    for (int w = 0; w < n_; ++w)
      for (int i = 1; i <= entry(w).domain_count; ++i) members[{w, i}];
    for (int w = 0; w < n_; ++w) {
      const Choice& c = placement[static_cast<std::size_t>(w)];
      members[{w, c.cont}].push_back(w);
      int owner = c.head;
      int index = c.index;
      for (int guard = 0; owner != kRoot && guard <= n_; ++guard) {
        members[{owner, index}].push_back(w);
        const Choice& up = placement[static_cast<std::size_t>(owner)];
        owner = up.head;
        index = up.index;
      }
    }
    std::vector<DomainNode> domains;
    for (auto& [ref, m] : members) domains.push_back({ref.owner, ref.index, m});

    std::vector<std::vector<std::vector<std::string>>> feature_options;
    for (int w = 0; w < n_; ++w) {
      auto it = task_.required_features.find(static_cast<std::size_t>(w));
      feature_options.push_back(feature_choices(entry(w), it == task_.required_features.end() ? std::vector<std::string>{} : it->second));
      if (feature_options.back().empty()) return;
    }

    std::vector<DependencyEdge> edges;
    for (int w = 0; w < n_; ++w)
      if (w != root_) edges.push_back({tree_[static_cast<std::size_t>(w)].head, w, type_into(w)});

    auto make = [&](const std::vector<std::size_t>& feats) {
      std::vector<Word> words;
      for (int w = 0; w < n_; ++w) {
        const LexEntry& e = entry(w);
        words.push_back({w, task_.tokens[static_cast<std::size_t>(w)], e.word_class,
                         feature_options[static_cast<std::size_t>(w)][feats[static_cast<std::size_t>(w)]], e.domain_count});
      }
      return DependencyStructure(std::move(words), root_, edges, domains);
    };

    std::vector<std::size_t> radix;
    for (const auto& o : feature_options) radix.push_back(o.size());
    std::vector<std::size_t> pick(feature_options.size(), 0);
    if (!validate(make(pick)).empty()) return;

    std::vector<Formula> constraints;
    for (int w = 0; w < n_; ++w) constraints.push_back(effective_constraint(entry(w), g_));
    do {
      DependencyStructure s = make(pick);
      StructureIndex index(s);
      bool ok = true;
      for (int w = 0; w < n_ && ok; ++w) {
        ok = satisfies(index, w, constraints[static_cast<std::size_t>(w)]);
        if (ok && w != root_) {
          const Typed& t = tree_[static_cast<std::size_t>(w)];
          ok = satisfies(index, w, entry(t.head).slots[t.slot].filler);
        }
      }
      if (ok) {
        std::string key = canonical_key(s);
        found_.emplace(std::move(key), std::move(s));
      }
    } while (advance(pick, radix));
  }

  const ParseTask& task_;
  const Grammar& g_;
  int n_;
  std::vector<const LexEntry*> entries_;
  std::vector<Typed> tree_;
  int root_ = kRoot;
  std::map<std::string, DependencyStructure> found_;
};

}  // namespace

ParseResult brute_force_parse(const ParseTask& task) {
  if (!task.grammar) throw Error("parse task has no grammar");
  if (task.tokens.empty()) throw Error("parse task has no tokens");
  if (task.tokens.size() > 7) throw SizeGuardError("brute-force parsing is limited to 7 tokens");
  for (const auto& t : task.tokens)
    if (lookup(*task.grammar, t).empty()) throw LexicalGap(t);
  const auto start = std::chrono::steady_clock::now();
  ParseResult result;
  result.structures = BruteForce(task).run();
  result.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
  return result;
}

}  // namespace ordlog
