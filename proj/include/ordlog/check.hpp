#pragma once

#include <string>
#include <vector>

#include "ordlog/core.hpp"
#include "ordlog/grammar.hpp"

namespace ordlog {

/// A grammar-level problem with one word of a structure.
struct Finding {
  int word = kRoot;  // kRoot when the problem is not tied to a word
  std::string message;
};

struct CheckReport {
  std::vector<Violation> violations;  // structural clauses
  std::vector<Finding> findings;      // lexicon, valency, float and constraint problems

  bool ok() const { return violations.empty() && findings.empty(); }
};

/// Full licensing check of a structure against a grammar: structural well-formedness,
/// entry match, slot cardinalities, fillers, float licensing and effective constraints.
/// Failing constraints are reported per failing top-level conjunct.
CheckReport check_structure(const DependencyStructure& structure, const Grammar& grammar);

}  // namespace ordlog
