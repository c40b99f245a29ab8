#include <doctest.h>

#include "ordlog/check.hpp"
#include "ordlog/errors.hpp"
#include "ordlog/parser.hpp"
#include "support.hpp"

using namespace ordlog;

namespace {

ParseTask task_for(const Grammar& g, const std::string& sentence) {
  ParseTask t;
  t.grammar = &g;
  t.tokens = testkit::words_of(sentence);
  return t;
}

std::vector<std::string> keys(const ParseResult& r) {
  std::vector<std::string> out;
  for (const auto& s : r.structures) out.push_back(canonical_key(s));
  return out;
}

bool has_edge(const DependencyStructure& s, int head, const std::string& type, int dep) {
  const auto& es = s.edges();
  return std::find(es.begin(), es.end(), DependencyEdge{head, dep, type}) != es.end();
}

}  // namespace

TEST_CASE("fig1 sentence has exactly the fig1 structure") {
  auto r = parse(task_for(testkit::german(), "Den Mann hat der Junge gesehen"));
  CHECK(r.exhausted);
  REQUIRE(r.structures.size() == 1);
  CHECK(r.structures[0] == testkit::fig1());
}

TEST_CASE("subject-first order has two structures") {
  auto r = parse(task_for(testkit::german(), "Der Junge hat den Mann gesehen"));
  REQUIRE(r.structures.size() == 2);
  bool contiguous = false;
  for (const auto& s : r.structures) {
    CHECK(s.word(2).has_feature("V2"));
    CHECK(has_edge(s, 5, "obj", 4));
    CHECK(has_edge(s, 2, "subj", 1));
    Placement p = places(s, 4);
    CHECK((p.domain == DomainRef{5, 1} || p.domain == DomainRef{2, 2}));
    if (p.positional_head == 5) contiguous = true;
  }
  CHECK(contiguous);
}

TEST_CASE("order type restrictions") {
  const Grammar& g = testkit::german();
  auto t = task_for(g, "Den Mann hat der Junge gesehen");
  t.required_features[2] = {"VEnd"};
  CHECK(parse(t).structures.empty());
  t.required_features[2] = {"V1"};
  CHECK(parse(t).structures.empty());
  t.required_features[2] = {"V2"};
  CHECK(parse(t).structures.size() == 1);
  t.required_features[2] = {"topic"};
  CHECK_THROWS_AS(parse(t), GrammarError);

  // verb-final and verb-initial orders exist with their own order type
  auto vend = parse(task_for(g, "Den Mann der Junge gesehen hat"));
  REQUIRE(vend.structures.size() >= 1);
  for (const auto& s : vend.structures) CHECK(s.word(5).has_feature("VEnd"));
  auto v1 = parse(task_for(g, "hat der Junge den Mann gesehen"));
  REQUIRE(v1.structures.size() >= 1);
  for (const auto& s : v1.structures) CHECK(s.word(0).has_feature("V1"));
}

TEST_CASE("trivial inputs") {
  const Grammar& g = testkit::german();
  CHECK(parse(task_for(g, "hat")).structures.empty());
  try {
    parse(task_for(g, "Den xyzzy hat"));
    FAIL("expected a lexical gap");
  } catch (const LexicalGap& e) {
    CHECK(e.token() == "xyzzy");
  }
  CHECK_THROWS_AS(parse(task_for(g, "")), Error);

  Grammar one = load_grammar("(grammar (classes X) (word \"x\" :class X))");
  CHECK(parse(task_for(one, "x")).structures.size() == 1);
  CHECK(brute_force_parse(task_for(one, "x")).structures.size() == 1);
  CHECK(recognize(task_for(one, "x")));
  CHECK(parse(task_for(one, "x x")).structures.empty());
  CHECK(brute_force_parse(task_for(one, "x x")).structures.empty());
  CHECK_THROWS_AS(brute_force_parse(task_for(one, "x x x x x x x x")), SizeGuardError);
}

TEST_CASE("recognition of the counting language") {
  const Grammar& g = testkit::anbncn();
  CHECK(recognize(task_for(g, "a a b b c c")));
  CHECK_FALSE(recognize(task_for(g, "a a b b c")));
  CHECK_FALSE(recognize(task_for(g, "a b c a b c")));
  CHECK(recognize(task_for(g, "a b c")));
  // only an a can head the sentence
  for (const char* s : {"c", "b", "b c", "c b", "a b"}) CHECK_FALSE(recognize(task_for(g, s)));
}

TEST_CASE("limits") {
  const Grammar& g = testkit::german();
  auto t = task_for(g, "Der Junge hat den Mann gesehen");
  auto all = parse(t);
  REQUIRE(all.structures.size() == 2);

  t.limits.max_structures = 1;
  auto one = parse(t);
  CHECK_FALSE(one.exhausted);
  REQUIRE(one.structures.size() == 1);
  auto all_keys = keys(all);
  CHECK(std::count(all_keys.begin(), all_keys.end(), keys(one)[0]) == 1);

  t.limits.max_structures = 2;
  auto two = parse(t);
  CHECK(two.exhausted);
  CHECK(keys(two) == keys(all));

  t.limits = {};
  t.limits.max_steps = 5;
  auto cut = parse(t);
  CHECK_FALSE(cut.exhausted);
  CHECK_THROWS_AS(recognize(t), Error);
}

TEST_CASE("results are deterministic and sorted") {
  const Grammar& g = testkit::anbncn();
  auto a = parse(task_for(g, "a a a b b b c c c"));
  auto b = parse(task_for(g, "a a a b b b c c c"));
  CHECK(keys(a) == keys(b));
  auto k = keys(a);
  CHECK(std::is_sorted(k.begin(), k.end()));
  CHECK(std::adjacent_find(k.begin(), k.end()) == k.end());
}

TEST_CASE("parse agrees with brute force on hand cases") {
  for (const char* s : {"a b c", "a a b b c c", "a b b c", "c b a"}) {
    auto t = task_for(testkit::anbncn(), s);
    INFO(s);
    CHECK(keys(parse(t)) == keys(brute_force_parse(t)));
  }
}

TEST_CASE("parse agrees with brute force on random mini grammars") {
  std::mt19937 rng(202);
  int nonempty = 0;
  for (int compared = 0; compared < 40;) {
    auto c = testkit::random_mini_case(rng);
    ParseTask t;
    t.grammar = &c.grammar;
    t.tokens = c.tokens;
    INFO(serialize_grammar(c.grammar));
    // result sets too large to hold twice are redrawn
    t.limits.max_structures = 5000;
    auto fast = parse(t);
    if (!fast.exhausted) continue;
    ++compared;
    t.limits = {};
    auto slow = brute_force_parse(t);
    CHECK(keys(fast) == keys(slow));
    nonempty += !slow.structures.empty();

    // every structure passes the independent licensing check
    for (const auto& s : fast.structures) {
      auto report = check_structure(s, c.grammar);
      INFO(format_structure(s));
      CHECK(report.ok());
    }
  }
  CHECK(nonempty >= 8);
}

TEST_CASE("demo sentences pass the licensing check") {
  const Grammar& g = testkit::german();
  for (const char* s : {"Den Mann hat der Junge gesehen", "Der Junge hat den Mann gesehen", "Den Mann der Junge gesehen hat",
                        "hat der Junge den Mann gesehen", "Den Mann hat gesehen der Junge"}) {
    auto r = parse(task_for(g, s));
    INFO(s);
    for (const auto& st : r.structures) {
      auto report = check_structure(st, g);
      CHECK(report.ok());
      CHECK(validate(st).empty());
    }
  }
}

TEST_CASE("raising the limit only adds structures") {
  const Grammar& g = testkit::anbncn();
  auto t = task_for(g, "a a b b c c");
  std::vector<std::string> previous;
  for (std::size_t max = 1; max <= 9; ++max) {
    t.limits.max_structures = max;
    auto k = keys(parse(t));
    CHECK(std::includes(k.begin(), k.end(), previous.begin(), previous.end()));
    previous = k;
  }
}
