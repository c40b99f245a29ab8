#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ordlog/logic.hpp"

namespace ordlog {

inline constexpr int kMaxSlotCardinality = 8;

/// A valency slot: how many dependents of one type a word takes, what they must satisfy,
/// and across which dependency types they may float to a transitive head.
struct Slot {
  std::string dep_type;
  int min = 1;
  int max = 1;
  Formula filler = Formula::truth();
  std::vector<std::string> float_set;  // sorted, unique

  friend bool operator==(const Slot&, const Slot&) = default;
};

struct LexEntry {
  std::string surface;
  std::string word_class;
  std::vector<std::string> fixed_features;  // sorted
  std::vector<std::string> free_features;   // sorted, disjoint from fixed
  int domain_count = 1;
  Formula constraint = Formula::truth();
  std::vector<Slot> slots;  // at most one per dependency type

  const Slot* find_slot(std::string_view dep_type) const;

  friend bool operator==(const LexEntry&, const LexEntry&) = default;
};

struct Grammar : Declarations {
  std::map<std::string, Formula> axioms;  // per word class
  std::vector<LexEntry> entries;

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

/// Parses, desugars and symbol-checks a grammar file. Syntax errors carry line/column;
/// undeclared symbols and duplicate (surface, class) entries raise GrammarError.
Grammar load_grammar(std::string_view text);

/// Text that load_grammar reads back to an equal Grammar.
std::string serialize_grammar(const Grammar& grammar);

/// Entries whose surface matches exactly, in declaration order.
std::vector<const LexEntry*> lookup(const Grammar& grammar, std::string_view surface);

/// Class axiom of the entry's class conjoined with the entry constraint.
Formula effective_constraint(const LexEntry& entry, const Grammar& grammar);

/// Re-runs the load-time checks on a grammar assembled in code; throws GrammarError.
void check_grammar(const Grammar& grammar);

}  // namespace ordlog
