#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ordlog/core.hpp"
#include "ordlog/sexpr.hpp"

namespace ordlog {

/// A description-language formula. Or, implies and equiv are desugared into And/Not
/// when built, so evaluation only sees the primitive rows.
struct Formula {
  enum class Kind {
    Class,        // word class is `symbol`
    Feature,      // word carries feature `symbol`
    Dep,          // some `symbol`-dependent satisfies operands[0]
    PrecAll,      // no other member of the containing domain precedes the word
    FollAll,      // ... follows the word
    PrecTypes,    // no co-placed word entered by a type in `symbols` precedes the word
    FollTypes,    // ... follows the word
    Float,        // positional head reaches the direct head via types in `symbols`
    Single,       // domain `index` has at most one dependency-maximal member
    Filled,       // domain `index` is non-empty
    AllInDomain,  // every member of domain `index` has all features in `symbols`
    And,
    Not,
  };

  Kind kind = Kind::And;
  std::string symbol;
  std::vector<std::string> symbols;  // sorted, unique
  int index = 0;
  std::vector<Formula> operands;

  static Formula class_atom(std::string c);
  static Formula feature(std::string a);
  static Formula dep(std::string d, Formula f);
  static Formula first();
  static Formula last();
  static Formula prec(std::vector<std::string> types);
  static Formula foll(std::vector<std::string> types);
  static Formula floating(std::vector<std::string> types);
  static Formula single(int i);
  static Formula filled(int i);
  static Formula all(int i, std::vector<std::string> features);
  static Formula conj(std::vector<Formula> fs);
  static Formula truth() { return conj({}); }
  static Formula negate(Formula f);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula equiv(Formula a, Formula b);

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Reads the s-expression syntax: (class C) (feat a) (dep d f) (first) (last)
/// (prec d...) (foll d...) (float d...) (single i) (filled i) (all i a...)
/// (and f...) (or f...) (not f) (implies f g) (equiv f g).
Formula parse_formula(const sexpr::Node& node);
Formula parse_formula(std::string_view text);

/// Canonical text of the desugared formula; parse_formula(format_formula(f)) == f.
std::string format_formula(const Formula& f);

/// Declared symbol sets a formula is checked against.
struct Declarations {
  std::vector<std::string> classes;
  std::vector<std::string> features;
  std::vector<std::string> dep_types;

  bool has_class(std::string_view c) const;
  bool has_feature(std::string_view a) const;
  bool has_dep_type(std::string_view d) const;

  friend bool operator==(const Declarations&, const Declarations&) = default;
};

/// Every class, feature or dependency-type symbol in `f` that `decls` does not declare,
/// in first-occurrence order without repeats.
std::vector<std::string> free_variables_check(const Formula& f, const Declarations& decls);

/// Largest domain index mentioned (0 if none).
int max_domain_index(const Formula& f);

/// T,w |= f over a valid structure. A domain index beyond the word's domain count is an
/// EvaluationError rather than false.
bool satisfies(const StructureIndex& index, int word, const Formula& f);
bool satisfies(const DependencyStructure& structure, int word, const Formula& f);

}  // namespace ordlog
