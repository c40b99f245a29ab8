#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ordlog {

/// Id of the implicit ROOT token that governs the dependency root and owns the sentence domain.
inline constexpr int kRoot = -1;

struct Word {
  int id = 0;  // position in the sentence, 0-based
  std::string surface;
  std::string word_class;
  std::vector<std::string> features;  // sorted, unique
  int domain_count = 1;

  bool has_feature(std::string_view feature) const;

  friend bool operator==(const Word&, const Word&) = default;
};

/// Identity of an order domain: the i-th (1-based) domain owned by a word.
struct DomainRef {
  int owner = kRoot;
  int index = 1;

  friend auto operator<=>(const DomainRef&, const DomainRef&) = default;
};

inline constexpr DomainRef kRootDomain{kRoot, 1};

struct DomainNode {
  int owner = kRoot;
  int index = 1;
  std::vector<int> members;  // sorted word ids

  DomainRef ref() const { return {owner, index}; }
  bool contains(int word) const;
  bool empty() const { return members.empty(); }

  friend bool operator==(const DomainNode&, const DomainNode&) = default;
};

struct DependencyEdge {
  int head = kRoot;
  int dependent = 0;
  std::string dep_type;

  friend auto operator<=>(const DependencyEdge&, const DependencyEdge&) = default;
};

/// Words in sentence order, a root, typed edges and one domain object per (owner, index).
///
/// The constructor normalizes (sorted features, members, edges and domains) and fills
/// every domain slot a word declares but the input omits with an empty domain. Ids that
/// do not resolve raise MalformedInput; everything else is left to validate().
class DependencyStructure {
 public:
  DependencyStructure() = default;
  DependencyStructure(std::vector<Word> words, int root, std::vector<DependencyEdge> edges,
                      std::vector<DomainNode> domains);

  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  const Word& word(int id) const { return words_.at(static_cast<std::size_t>(id)); }
  int root() const { return root_; }
  const std::vector<DependencyEdge>& edges() const { return edges_; }
  const std::vector<DomainNode>& domains() const { return domains_; }

  /// The domain owned by ROOT, covering the whole sentence.
  DomainNode root_domain() const;

  /// Looks up a domain by identity, including kRootDomain; throws MalformedInput if absent.
  const DomainNode& domain(DomainRef ref) const;

  /// The owned domains of `owner`, ordered by index.
  std::span<const DomainNode> domains_of(int owner) const;

  friend bool operator==(const DependencyStructure&, const DependencyStructure&) = default;

 private:
  std::vector<Word> words_;
  int root_ = 0;
  std::vector<DependencyEdge> edges_;
  std::vector<DomainNode> domains_;
  std::vector<std::size_t> first_domain_;  // per word, offset into domains_
  DomainNode root_domain_;
};

enum class Clause {
  Tree,              // edges form a tree over the words rooted in root
  Convexity,         // every domain is a contiguous span of the sentence
  Nesting,           // any two domains are disjoint or one includes the other
  SelfContainment,   // each word is in exactly one of its own domains
  DisjointSequence,  // one word's domains are pairwise disjoint
  HeadContainment,   // a word's containing domain sits inside a domain of a transitive head
  SequenceOrder,     // a word's domain sequence agrees with sentence precedence
  Closure,           // a word inside a foreign domain brings all of its own domains along
};

std::string_view clause_name(Clause clause);

struct Violation {
  Clause clause;
  std::string message;
  std::vector<int> words;
  std::vector<DomainRef> domains;
};

/// Returns every violated well-formedness clause; empty iff the structure is valid.
std::vector<Violation> validate(const DependencyStructure& structure);

/// The tree over domains induced by member-set inclusion. Node 0 is the ROOT domain.
///
/// Equal extensions are ordered by owner depth in the dependency tree (shallower owner is
/// the parent). An empty domain hangs below the domain its owner is placed in.
class DomainTree {
 public:
  std::size_t size() const { return nodes_.size(); }
  const DomainNode& node(std::size_t i) const { return nodes_[i]; }
  /// -1 for the root node.
  int parent(std::size_t i) const { return parents_[i]; }
  std::span<const int> children(std::size_t i) const { return children_[i]; }
  /// Throws MalformedInput for an unknown ref.
  std::size_t index_of(DomainRef ref) const;

 private:
  friend class StructureIndex;
  std::vector<DomainNode> nodes_;
  std::vector<int> parents_;
  std::vector<std::vector<int>> children_;
};

struct Placement {
  int positional_head = kRoot;
  DomainRef domain = kRootDomain;
};

/// Derived relations over one structure: heads, depths, the domain tree, placements.
/// Cheap to query once built; the logic module evaluates formulas against it.
class StructureIndex {
 public:
  /// Throws ValidationError when domains are not laminar (the domain tree is undefined).
  explicit StructureIndex(const DependencyStructure& structure);

  const DependencyStructure& structure() const { return *structure_; }

  /// kRoot for the dependency root and for words without an incoming edge.
  int head(int word) const { return heads_[idx(word)]; }
  /// Empty for the root.
  const std::string& incoming_type(int word) const { return types_[idx(word)]; }
  std::span<const int> dependents(int word) const { return dependents_[idx(word)]; }
  /// Depth below the root (root = 0, ROOT = -1); words off the tree get size().
  int depth(int word) const;
  /// True when `ancestor` is a proper transitive head of `word` (ROOT heads everything).
  bool dominates(int ancestor, int word) const;

  const DomainTree& tree() const { return tree_; }

  /// The unique own domain that contains `word`; throws ValidationError otherwise.
  const DomainNode& containing_domain(int word) const;
  /// Parent of the containing domain and its owner; throws ValidationError when the
  /// positional head is not a transitive head of the word.
  Placement places(int word) const;
  /// Members whose dependency head lies outside the domain.
  std::vector<int> maximal_members(DomainRef ref) const;

 private:
  std::size_t idx(int word) const { return static_cast<std::size_t>(word); }
  int containing_node(int word) const;  // index into tree_, -1 if not exactly one

  const DependencyStructure* structure_;
  std::vector<int> heads_;
  std::vector<std::string> types_;
  std::vector<std::vector<int>> dependents_;
  std::vector<int> depths_;
  DomainTree tree_;
};

/// Throws ValidationError when domains are not laminar.
DomainTree domain_tree(const DependencyStructure& structure);
const DomainNode& containing_domain(const DependencyStructure& structure, int word);
Placement places(const DependencyStructure& structure, int word);
std::vector<int> maximal_members(const DependencyStructure& structure, DomainRef domain);

std::string describe(DomainRef ref);

}  // namespace ordlog
