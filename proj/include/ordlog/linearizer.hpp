#pragma once

#include <string>
#include <vector>

#include "ordlog/core.hpp"
#include "ordlog/grammar.hpp"

namespace ordlog {

inline constexpr std::size_t kMaxLinearizeTokens = 8;

/// One admissible surface order. `tokens[p]` is the tree word placed at position p; when
/// several permutations give the same surfaces, the lexicographically smallest is kept.
struct Linearization {
  std::vector<std::string> surfaces;
  std::vector<int> tokens;

  friend bool operator==(const Linearization&, const Linearization&) = default;
};

/// Every order of the words for which a well-formed structure with exactly these edges
/// exists. Words are identified by id; surface and class pick the lexical entry.
/// Results are sorted by surfaces. Refuses more than 8 words (SizeGuardError).
std::vector<Linearization> linearize(const Grammar& grammar, const std::vector<Word>& words,
                                     const std::vector<DependencyEdge>& edges);

/// Uses the words and edges of `tree`; its order, domains and features are ignored.
std::vector<Linearization> linearize(const Grammar& grammar, const DependencyStructure& tree);

}  // namespace ordlog
