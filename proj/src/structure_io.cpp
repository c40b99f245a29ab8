#include "ordlog/structure_io.hpp"

#include <map>
#include <sstream>

#include "ordlog/errors.hpp"
#include "ordlog/sexpr.hpp"

namespace ordlog {
namespace {

using sexpr::Node;

int as_int(const Node& node, const char* what) {
  if (!node.is_integer()) sexpr::fail(node, std::string("expected integer ") + what);
  return static_cast<int>(node.value);
}

std::string as_symbol(const Node& node, const char* what) {
  if (!node.is_symbol() || node.is_keyword()) sexpr::fail(node, std::string("expected symbol ") + what);
  return node.text;
}

const Node& list_arg(const Node& node, const char* what) {
  if (!node.is_list()) sexpr::fail(node, std::string("expected list ") + what);
  return node;
}

}  // namespace

DependencyStructure parse_structure(std::string_view text) {
  Node top = sexpr::read_one(text);
  if (!top.is_form("structure")) sexpr::fail(top, "expected (structure ...)");

  const Node* words_form = nullptr;
  const Node* root_form = nullptr;
  const Node* edges_form = nullptr;
  const Node* domains_form = nullptr;
  for (std::size_t i = 1; i < top.items.size(); ++i) {
    const Node& part = top.items[i];
    const Node** slot = nullptr;
    if (part.is_form("words")) slot = &words_form;
    else if (part.is_form("root")) slot = &root_form;
    else if (part.is_form("edges")) slot = &edges_form;
    else if (part.is_form("domains")) slot = &domains_form;
    else sexpr::fail(part, "unknown structure section");
    if (*slot) sexpr::fail(part, "duplicate section");
    *slot = &part;
  }
  if (!words_form) sexpr::fail(top, "missing (words ...)");
  if (!root_form) sexpr::fail(top, "missing (root ...)");

  std::vector<Word> words;
  std::vector<int> explicit_count;
  for (std::size_t i = 1; i < words_form->items.size(); ++i) {
    const Node& w = list_arg(words_form->items[i], "for a word");
    if (w.items.empty() || !w.items[0].is_string()) sexpr::fail(w, "word must start with its surface string");
    Word word;
    word.id = static_cast<int>(words.size());
    word.surface = w.items[0].text;
    int count = 0;
    bool has_class = false;
    for (std::size_t k = 1; k < w.items.size(); k += 2) {
      const Node& key = w.items[k];
      if (!key.is_keyword()) sexpr::fail(key, "expected keyword");
      if (k + 1 >= w.items.size()) sexpr::fail(key, "keyword without value");
      const Node& value = w.items[k + 1];
      if (key.text == ":class") {
        word.word_class = as_symbol(value, "after :class");
        has_class = true;
      } else if (key.text == ":feats") {
        for (const Node& f : list_arg(value, "after :feats").items) word.features.push_back(as_symbol(f, "in :feats"));
      } else if (key.text == ":domains") {
        count = as_int(value, "after :domains");
        if (count < 1) sexpr::fail(value, "domain count must be positive");
      } else {
        sexpr::fail(key, "unknown word keyword " + key.text);
      }
    }
    if (!has_class) sexpr::fail(w, "word lacks :class");
    words.push_back(std::move(word));
    explicit_count.push_back(count);
  }

  if (root_form->items.size() != 2) sexpr::fail(*root_form, "expected (root <index>)");
  int root = as_int(root_form->items[1], "root index");

  std::vector<DependencyEdge> edges;
  if (edges_form)
    for (std::size_t i = 1; i < edges_form->items.size(); ++i) {
      const Node& e = list_arg(edges_form->items[i], "for an edge");
      if (e.items.size() != 3) sexpr::fail(e, "expected (<head> <dep-type> <dependent>)");
      edges.push_back({as_int(e.items[0], "edge head"), as_int(e.items[2], "edge dependent"), as_symbol(e.items[1], "dependency type")});
    }

  std::vector<DomainNode> domains;
  std::map<int, int> highest;
  if (domains_form)
    for (std::size_t i = 1; i < domains_form->items.size(); ++i) {
      const Node& d = list_arg(domains_form->items[i], "for a domain");
      if (d.items.size() != 3) sexpr::fail(d, "expected (<owner> <index> (<member> ...))");
      DomainNode node{as_int(d.items[0], "domain owner"), as_int(d.items[1], "domain index"), {}};
      for (const Node& m : list_arg(d.items[2], "of members").items) node.members.push_back(as_int(m, "member"));
      highest[node.owner] = std::max(highest[node.owner], node.index);
      domains.push_back(std::move(node));
    }

  for (std::size_t i = 0; i < words.size(); ++i) {
    int inferred = std::max(1, highest.count(static_cast<int>(i)) ? highest[static_cast<int>(i)] : 1);
    words[i].domain_count = explicit_count[i] > 0 ? explicit_count[i] : inferred;
  }
  return DependencyStructure(std::move(words), root, std::move(edges), std::move(domains));
}

std::string format_structure(const DependencyStructure& s) {
  std::ostringstream out;
  out << "(structure\n  (words";
  for (const Word& w : s.words()) {
    out << "\n    (" << sexpr::quote(w.surface) << " :class " << w.word_class << " :feats (";
    for (std::size_t i = 0; i < w.features.size(); ++i) out << (i ? " " : "") << w.features[i];
    out << "))";
  }
  out << ")\n  (root " << s.root() << ")\n  (edges";
  for (const auto& e : s.edges()) out << "\n    (" << e.head << ' ' << e.dep_type << ' ' << e.dependent << ')';
  out << ")\n  (domains";
  for (const auto& d : s.domains()) {
    out << "\n    (" << d.owner << ' ' << d.index << " (";
    for (std::size_t i = 0; i < d.members.size(); ++i) out << (i ? " " : "") << d.members[i];
    out << "))";
  }
  out << "))\n";
  return out.str();
}

}  // namespace ordlog
