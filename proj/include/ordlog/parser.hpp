#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ordlog/core.hpp"
#include "ordlog/grammar.hpp"

namespace ordlog {

struct SearchLimits {
  std::size_t max_structures = std::numeric_limits<std::size_t>::max();
  std::size_t max_steps = std::numeric_limits<std::size_t>::max();
  std::chrono::milliseconds timeout{0};  // zero: no timeout
};

struct ParseTask {
  const Grammar* grammar = nullptr;
  std::vector<std::string> tokens;
  SearchLimits limits;
  /// Token index -> features the word must carry (fixed or chosen among its free ones).
  std::map<std::size_t, std::vector<std::string>> required_features;
};

struct ParseStats {
  std::size_t nodes = 0;
  std::chrono::microseconds elapsed{0};
};

struct ParseResult {
  std::vector<DependencyStructure> structures;  // canonical order
  bool exhausted = true;                        // false when a limit cut the search short
  ParseStats stats;
};

/// All distinct well-formed structures for the tokens, found by backtracking over
/// entries, trees, placements and free features with three-valued pruning.
/// Throws LexicalGap for a token without entries.
ParseResult parse(const ParseTask& task);

/// Reference enumeration that only filters complete candidates through validate() and
/// satisfies(). Refuses more than 7 tokens.
ParseResult brute_force_parse(const ParseTask& task);

/// True iff parse() would return at least one structure; stops at the first.
bool recognize(const ParseTask& task);

/// Key used for duplicate suppression and ordering of results.
std::string canonical_key(const DependencyStructure& structure);

}  // namespace ordlog
