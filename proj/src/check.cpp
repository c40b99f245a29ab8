#include "ordlog/check.hpp"

#include <algorithm>
#include <map>

#include "ordlog/errors.hpp"
#include "ordlog/logic.hpp"

namespace ordlog {
namespace {

std::string who(const Word& w) { return "word " + std::to_string(w.id) + " \"" + w.surface + "\""; }

void conjuncts(const Formula& f, std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::And) {
    for (const auto& g : f.operands) conjuncts(g, out);
  } else {
    out.push_back(&f);
  }
}

const LexEntry* matching_entry(const Grammar& g, const Word& w) {
  for (const LexEntry* e : lookup(g, w.surface))
    if (e->word_class == w.word_class) return e;
  return nullptr;
}

}  // namespace

CheckReport check_structure(const DependencyStructure& s, const Grammar& g) {
  CheckReport report;
  report.violations = validate(s);
  auto add = [&](int w, std::string msg) { report.findings.push_back({w, std::move(msg)}); };

  std::vector<const LexEntry*> entries(s.size(), nullptr);
  for (const Word& w : s.words()) {
    if (!g.has_class(w.word_class)) add(w.id, who(w) + ": undeclared class " + w.word_class);
    for (const auto& a : w.features)
      if (!g.has_feature(a)) add(w.id, who(w) + ": undeclared feature " + a);
    const LexEntry* e = matching_entry(g, w);
    if (!e) {
      add(w.id, who(w) + ": no lexical entry of class " + w.word_class);
      continue;
    }
    entries[static_cast<std::size_t>(w.id)] = e;
    if (e->domain_count != w.domain_count)
      add(w.id, who(w) + ": owns " + std::to_string(w.domain_count) + " domain(s), the entry declares " +
                    std::to_string(e->domain_count));
    for (const auto& a : e->fixed_features)
      if (!w.has_feature(a)) add(w.id, who(w) + ": lacks fixed feature " + a);
    for (const auto& a : w.features)
      if (!std::binary_search(e->fixed_features.begin(), e->fixed_features.end(), a) &&
          !std::binary_search(e->free_features.begin(), e->free_features.end(), a))
        add(w.id, who(w) + ": feature " + a + " is neither fixed nor free in its entry");
  }
  for (const auto& e : s.edges())
    if (!g.has_dep_type(e.dep_type))
      add(e.head, "edge " + std::to_string(e.head) + " -" + e.dep_type + "-> " + std::to_string(e.dependent) +
                      ": undeclared dependency type");

  // Valency counts need only the edges.
  for (const Word& w : s.words()) {
    const LexEntry* e = entries[static_cast<std::size_t>(w.id)];
    if (!e) continue;
    std::map<std::string, int> count;
    for (const auto& edge : s.edges())
      if (edge.head == w.id) ++count[edge.dep_type];
    for (const auto& [type, n] : count)
      if (!e->find_slot(type)) add(w.id, who(w) + ": no slot for " + type + " dependents");
    for (const auto& slot : e->slots) {
      int n = count.count(slot.dep_type) ? count[slot.dep_type] : 0;
      if (n < slot.min || n > slot.max)
        add(w.id, who(w) + ": " + std::to_string(n) + " " + slot.dep_type + " dependent(s), slot allows " +
                      std::to_string(slot.min) + ".." + std::to_string(slot.max));
    }
  }

  if (!report.violations.empty()) return report;  // the logic needs a well-formed model

  StructureIndex index(s);
  for (const Word& w : s.words()) {
    const int h = index.head(w.id);
    if (h == kRoot) continue;
    const LexEntry* he = entries[static_cast<std::size_t>(h)];
    const Slot* slot = he ? he->find_slot(index.incoming_type(w.id)) : nullptr;
    if (!slot) continue;
    try {
      if (!satisfies(index, w.id, slot->filler))
        add(w.id, who(w) + ": does not satisfy the " + slot->dep_type + " filler " + format_formula(slot->filler));
    } catch (const EvaluationError& e) {
      add(w.id, who(w) + ": " + e.what());
    }
    const int positional = index.places(w.id).positional_head;
    for (int x = h; x != positional && x != kRoot; x = index.head(x))
      if (!std::binary_search(slot->float_set.begin(), slot->float_set.end(), index.incoming_type(x))) {
        add(w.id, who(w) + ": placed with word " + std::to_string(positional) + ", floating across " +
                      index.incoming_type(x) + " is not licensed");
        break;
      }
  }
  for (const Word& w : s.words()) {
    const LexEntry* e = entries[static_cast<std::size_t>(w.id)];
    if (!e) continue;
    std::vector<const Formula*> parts;
    Formula effective = effective_constraint(*e, g);
    conjuncts(effective, parts);
    for (const Formula* f : parts) {
      try {
        if (!satisfies(index, w.id, *f)) add(w.id, who(w) + ": constraint fails: " + format_formula(*f));
      } catch (const EvaluationError& ex) {
        add(w.id, who(w) + ": " + ex.what());
      }
    }
  }
  return report;
}

}  // namespace ordlog
