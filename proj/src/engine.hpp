#pragma once

// Internal search machinery shared by the parser and the linearizer.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ordlog/core.hpp"
#include "ordlog/grammar.hpp"

namespace ordlog::detail {

enum class Tri : unsigned char { False, True, Unknown };

/// Formula with symbols interned to bit positions of the grammar's declarations.
struct Compiled {
  Formula::Kind kind = Formula::Kind::And;
  int symbol = -1;
  std::uint64_t mask = 0;
  int index = 0;
  std::vector<Compiled> operands;
};

struct SlotInfo {
  const Slot* slot = nullptr;
  int dep = -1;
  std::uint64_t float_mask = 0;
  Compiled filler;
};

struct EntryInfo {
  const LexEntry* entry = nullptr;
  int class_id = -1;
  std::uint64_t fixed = 0;
  std::uint64_t free = 0;
  Compiled constraint;  // effective constraint (class axiom + entry constraint)
  std::vector<SlotInfo> slots;
};

class CompiledGrammar {
 public:
  explicit CompiledGrammar(const Grammar& grammar);

  const Grammar& grammar() const { return *grammar_; }
  const EntryInfo& info(const LexEntry* entry) const;
  std::vector<const EntryInfo*> lookup(const std::string& surface) const;
  int feature_id(const std::string& name) const;  // -1 if undeclared
  int class_id(const std::string& name) const;
  int dep_id(const std::string& name) const;

 private:
  Compiled compile(const Formula& f) const;

  const Grammar* grammar_;
  std::vector<EntryInfo> entries_;
};

/// Step, time and result budget shared by one search.
class Budget {
 public:
  Budget(std::size_t max_steps, std::chrono::milliseconds timeout);
  /// Counts one search node; false once a limit is exceeded.
  bool tick();
  bool exceeded() const { return exceeded_; }
  std::size_t steps() const { return steps_; }

 private:
  std::size_t steps_ = 0;
  std::size_t max_steps_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  bool exceeded_ = false;
};

/// One search over a fixed token sequence. Callbacks return false to stop the search;
/// the run_* drivers return false when stopped (by a callback or the budget).
class Search {
 public:
  using Leaf = std::function<bool()>;

  Search(const CompiledGrammar& grammar, std::vector<std::string> tokens, Budget& budget);

  int size() const { return n_; }

  // Inputs that restrict the search.
  std::vector<std::uint64_t> required;  // per token, feature bits that must be present

  // --- entries -----------------------------------------------------------------
  bool run_entries(const Leaf& on_entries);
  void set_entries(std::vector<const EntryInfo*> entries);

  // --- tree --------------------------------------------------------------------
  /// Enumerates typed dependency trees licensed by the chosen entries.
  bool run_tree(const Leaf& on_tree);
  /// Installs a fixed tree (head per token, kRoot for the root; slot index in head's
  /// entry). Returns false when the tree violates slot cardinalities.
  bool set_tree(const std::vector<int>& heads, const std::vector<int>& slots);
  void clear_tree();

  // --- placements ----------------------------------------------------------------
  bool run_placements(const Leaf& on_placed);

  // --- order -------------------------------------------------------------------
  /// Word -> sentence position. With no order, precedence rows evaluate to Unknown.
  void set_order(std::vector<int> positions);
  void clear_order();
  bool order_known() const { return order_known_; }
  /// Convexity and domain-sequence order of the current (partial) memberships.
  bool structure_possible() const;

  // --- features ----------------------------------------------------------------
  bool run_features(const Leaf& on_complete);

  /// No constraint or filler evaluates to False under the current knowledge.
  bool constraints_possible() const;

  /// Snapshot in sentence order.
  DependencyStructure build() const;

  // Read access for callers that drive their own enumeration.
  int head(int w) const { return head_[static_cast<std::size_t>(w)]; }
  int root() const { return root_; }
  const EntryInfo& entry(int w) const { return *entry_[static_cast<std::size_t>(w)]; }
  int dom(int owner, int index) const;
  int domain_owner(int d) const { return dom_owner_[static_cast<std::size_t>(d)]; }
  int domain_index(int d) const { return dom_index_[static_cast<std::size_t>(d)]; }
  int domain_count() const { return static_cast<int>(members_.size()); }
  std::uint64_t members(int d) const { return members_[static_cast<std::size_t>(d)]; }
  int root_domain() const { return root_dom_; }

 private:
  Tri eval(int w, const Compiled& f) const;
  Tri feature(int w, int bit) const;
  int dep_of(int w) const;  // type id of w's incoming edge, -1 for the root
  const SlotInfo* slot_info(int w) const;
  int placement_dom(int w) const { return dom(phead_[idx(w)], pidx_[idx(w)]); }
  bool all_placed() const { return placed_count_ == n_; }
  std::size_t idx(int w) const { return static_cast<std::size_t>(w); }

  bool entries_rec(int i, const Leaf& leaf);
  bool tree_rec(int i, const Leaf& leaf);
  bool tree_feasible(int next) const;
  bool creates_cycle(int i, int h) const;
  bool finish_tree(const Leaf& leaf);
  void complete_tree();
  bool place_rec(std::size_t k, const Leaf& leaf);
  bool feature_rec(int i, const Leaf& leaf);
  bool constraints_hold() const;
  void layout_domains();

  const CompiledGrammar* grammar_;
  std::vector<std::string> tokens_;
  Budget* budget_;
  int n_;
  std::vector<std::vector<const EntryInfo*>> options_;

  std::vector<const EntryInfo*> entry_;

  std::vector<int> head_;
  std::vector<int> slot_;
  std::vector<std::vector<int>> slot_count_;
  std::vector<std::vector<std::pair<int, int>>> candidates_;
  std::vector<std::uint64_t> type_mask_;
  std::vector<std::vector<int>> children_;
  std::vector<int> order_;
  int root_ = kRoot;
  bool tree_complete_ = false;

  std::vector<int> dom_base_;
  std::vector<int> dom_owner_;
  std::vector<int> dom_index_;
  int root_dom_ = 0;
  std::vector<std::uint64_t> members_;
  std::vector<char> placed_;
  std::vector<int> cont_;
  std::vector<int> phead_;
  std::vector<int> pidx_;
  int placed_count_ = 0;

  std::vector<std::uint64_t> feats_;
  std::vector<char> feats_known_;

  std::vector<int> pos_;
  std::vector<int> at_;  // position -> word
  bool order_known_ = false;
};

}  // namespace ordlog::detail
