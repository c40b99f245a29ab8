#include "ordlog/linearizer.hpp"

#include <algorithm>
#include <map>

#include "engine.hpp"
#include "ordlog/errors.hpp"

namespace ordlog {
namespace {

class Orders {
 public:
  explicit Orders(detail::Search& s) : s_(s), n_(s.size()) {}

  /// Called once per placement; enumerates orders compatible with its domains.
  bool run() {
    word_at_.assign(static_cast<std::size_t>(n_), -1);
    used_ = 0;
    extend(0);
    return true;
  }

  std::map<std::vector<std::string>, std::vector<int>>& found() { return found_; }
  std::vector<std::string> surfaces;

 private:
  using Mask = std::uint64_t;

  // Placing `w` next keeps every domain a contiguous block and keeps each owner's
  // domains in sequence.
  bool fits(int w) const {
    const Mask me = Mask{1} << w;
    for (int d = 0; d < s_.domain_count(); ++d) {
      if (d == s_.root_domain()) continue;
      const Mask m = s_.members(d);
      if (m & me) {
        const int owner = s_.domain_owner(d);
        const int index = s_.domain_index(d);
        for (int j = 1; j <= s_.entry(owner).entry->domain_count; ++j) {
          const Mask other = s_.members(s_.dom(owner, j));
          if (j < index && (other & ~used_)) return false;  // an earlier domain is unfinished
          if (j > index && (other & used_)) return false;   // a later domain has started
        }
      } else if ((m & used_) && (m & ~used_)) {
        return false;  // d started, is unfinished, and would get a gap
      }
    }
    return true;
  }

  void extend(int p) {
    if (p == n_) {
      check();
      return;
    }
    for (int w = 0; w < n_; ++w) {
      const Mask me = Mask{1} << w;
      if ((used_ & me) || !fits(w)) continue;
      word_at_[static_cast<std::size_t>(p)] = w;
      used_ |= me;
      extend(p + 1);
      used_ &= ~me;
    }
  }

  void check() {
    std::vector<std::string> seq;
    for (int w : word_at_) seq.push_back(surfaces[static_cast<std::size_t>(w)]);
    auto it = found_.find(seq);
    if (it != found_.end() && it->second <= word_at_) return;

    std::vector<int> pos(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p) pos[static_cast<std::size_t>(word_at_[static_cast<std::size_t>(p)])] = p;
    s_.set_order(pos);
    bool model = false;
    if (s_.structure_possible() && s_.constraints_possible())
      s_.run_features([&] {
        model = true;
        return false;
      });
    s_.clear_order();
    if (model) found_[seq] = word_at_;
  }

  detail::Search& s_;
  int n_;
  std::vector<int> word_at_;
  Mask used_ = 0;
  std::map<std::vector<std::string>, std::vector<int>> found_;
};

}  // namespace

std::vector<Linearization> linearize(const Grammar& grammar, const std::vector<Word>& words,
                                     const std::vector<DependencyEdge>& edges) {
  const std::size_t n = words.size();
  if (n == 0) throw Error("cannot linearize an empty tree");
  if (n > kMaxLinearizeTokens) throw SizeGuardError("linearization is limited to 8 words");
  for (std::size_t i = 0; i < n; ++i)
    if (words[i].id != static_cast<int>(i)) throw MalformedInput("word ids must be 0.." + std::to_string(n - 1));

  std::vector<int> heads(n, kRoot);
  std::vector<std::string> types(n);
  for (const auto& e : edges) {
    if (e.head < 0 || e.dependent < 0 || static_cast<std::size_t>(e.head) >= n || static_cast<std::size_t>(e.dependent) >= n)
      throw MalformedInput("edge refers to a missing word");
    auto d = static_cast<std::size_t>(e.dependent);
    if (heads[d] != kRoot) throw MalformedInput("word " + std::to_string(d) + " has two heads");
    heads[d] = e.head;
    types[d] = e.dep_type;
  }
  int roots = 0;
  for (std::size_t w = 0; w < n; ++w) {
    roots += heads[w] == kRoot;
    int x = static_cast<int>(w);
    for (std::size_t steps = 0; x != kRoot; ++steps) {
      if (steps > n) throw MalformedInput("edges contain a cycle");
      x = heads[static_cast<std::size_t>(x)];
    }
  }
  if (roots != 1) throw MalformedInput("edges must form a single rooted tree");

  detail::CompiledGrammar cg(grammar);
  std::vector<std::string> tokens;
  std::vector<const detail::EntryInfo*> entries;
  for (const auto& w : words) {
    tokens.push_back(w.surface);
    const detail::EntryInfo* chosen = nullptr;
    for (const auto* e : cg.lookup(w.surface))
      if (e->entry->word_class == w.word_class) chosen = e;
    if (!chosen) throw LexicalGap(w.surface + "/" + w.word_class);
    entries.push_back(chosen);
  }

  std::vector<int> slots(n, -1);
  for (std::size_t w = 0; w < n; ++w) {
    if (heads[w] == kRoot) continue;
    const auto& hs = entries[static_cast<std::size_t>(heads[w])]->entry->slots;
    auto it = std::find_if(hs.begin(), hs.end(), [&](const Slot& s) { return s.dep_type == types[w]; });
    if (it == hs.end()) return {};  // no slot licenses this edge, so no order can
    slots[w] = static_cast<int>(it - hs.begin());
  }

  detail::Budget budget(std::numeric_limits<std::size_t>::max(), std::chrono::milliseconds(0));
  detail::Search search(cg, tokens, budget);
  search.set_entries(entries);
  if (!search.set_tree(heads, slots)) return {};
  search.clear_order();

  Orders orders(search);
  orders.surfaces = tokens;
  search.run_placements([&] { return orders.run(); });

  std::vector<Linearization> out;
  for (auto& [seq, perm] : orders.found()) out.push_back({seq, perm});
  return out;
}

std::vector<Linearization> linearize(const Grammar& grammar, const DependencyStructure& tree) {
  return linearize(grammar, tree.words(), tree.edges());
}

}  // namespace ordlog
