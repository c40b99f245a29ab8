#include "ordlog/parser.hpp"

#include <algorithm>
#include <set>

#include "engine.hpp"
#include "ordlog/errors.hpp"
#include "ordlog/structure_io.hpp"

namespace ordlog {

std::string canonical_key(const DependencyStructure& structure) { return format_structure(structure); }

namespace detail {

std::vector<std::uint64_t> required_masks(const ParseTask& task, const CompiledGrammar& cg) {
  std::vector<std::uint64_t> out(task.tokens.size(), 0);
  for (const auto& [token, features] : task.required_features) {
    if (token >= task.tokens.size()) throw Error("required feature on token " + std::to_string(token) + " beyond the sentence");
    for (const auto& a : features) {
      int id = cg.feature_id(a);
      if (id < 0) throw GrammarError("undeclared feature '" + a + "' in required features", a);
      out[token] |= std::uint64_t{1} << id;
    }
  }
  return out;
}

void check_task(const ParseTask& task) {
  if (!task.grammar) throw Error("parse task has no grammar");
  if (task.tokens.empty()) throw Error("parse task has no tokens");
  for (const auto& t : task.tokens)
    if (lookup(*task.grammar, t).empty()) throw LexicalGap(t);
}

}  // namespace detail

namespace {

struct Found {
  std::vector<std::pair<std::string, DependencyStructure>> structures;  // search order
  bool budget_exceeded = false;
  ParseStats stats;
};

// Stops as soon as `cap` distinct structures are found.
Found run_search(const ParseTask& task, std::size_t cap) {
  detail::check_task(task);
  const auto start = std::chrono::steady_clock::now();
  detail::CompiledGrammar cg(*task.grammar);
  detail::Budget budget(task.limits.max_steps, task.limits.timeout);
  detail::Search search(cg, task.tokens, budget);
  search.required = detail::required_masks(task, cg);

  Found out;
  std::set<std::string> seen;
  auto on_complete = [&] {
    DependencyStructure s = search.build();
    std::string key = canonical_key(s);
    if (seen.insert(key).second) out.structures.emplace_back(std::move(key), std::move(s));
    return out.structures.size() < cap;
  };
  auto on_placed = [&] { return search.run_features(on_complete); };
  auto on_tree = [&] { return search.run_placements(on_placed); };
  auto on_entries = [&] { return search.run_tree(on_tree); };
  search.run_entries(on_entries);

  out.budget_exceeded = budget.exceeded();
  out.stats.nodes = budget.steps();
  out.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
  return out;
}

}  // namespace

ParseResult parse(const ParseTask& task) {
  const std::size_t max = task.limits.max_structures;
  // One structure beyond the limit tells a truncated search from an exact fit. The kept
  // structures are the first `max` in search order, so raising the limit only adds.
  const std::size_t cap = max == std::numeric_limits<std::size_t>::max() ? max : max + 1;
  Found found = run_search(task, cap);

  ParseResult result;
  result.exhausted = !found.budget_exceeded && found.structures.size() <= max;
  if (found.structures.size() > max) found.structures.resize(max);
  std::sort(found.structures.begin(), found.structures.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& f : found.structures) result.structures.push_back(std::move(f.second));
  result.stats = found.stats;
  return result;
}

bool recognize(const ParseTask& task) {
  Found found = run_search(task, 1);
  if (!found.structures.empty()) return true;
  if (found.budget_exceeded) throw Error("search limit reached before recognition was decided");
  return false;
}

}  // namespace ordlog
