#include <doctest.h>

#include "ordlog/errors.hpp"
#include "support.hpp"

using namespace ordlog;

namespace {

bool mentions(const Formula& haystack, const Formula& needle) {
  if (haystack == needle) return true;
  return std::any_of(haystack.operands.begin(), haystack.operands.end(),
                     [&](const Formula& f) { return mentions(f, needle); });
}

const char* kFinite =
    "(and (single 1) (filled 1) (all 1 initial)"
    "     (all 2 middle norel)"
    "     (single 3) (all 3 final norel)"
    "     (equiv (feat V2) (and (feat middle) (first) (all 1 norel)))"
    "     (equiv (feat VEnd) (and (feat middle) (last)))"
    "     (equiv (feat V1) (and (feat initial) (feat norel))))";

}  // namespace

TEST_CASE("demo grammar declarations") {
  const Grammar& g = testkit::german();
  CHECK(g.classes == std::vector<std::string>{"Vfin", "Vpart", "N", "Det"});
  CHECK(g.dep_types == std::vector<std::string>{"subj", "obj", "vpart", "det"});
  REQUIRE(g.axioms.count("Vfin"));
  CHECK(mentions(g.axioms.at("Vfin"), parse_formula(kFinite)));
}

TEST_CASE("lookup") {
  const Grammar& g = testkit::german();
  auto hat = lookup(g, "hat");
  REQUIRE(hat.size() == 1);
  CHECK(hat[0]->word_class == "Vfin");
  CHECK(hat[0]->domain_count == 3);
  REQUIRE(hat[0]->slots.size() == 2);
  const Slot* subj = hat[0]->find_slot("subj");
  const Slot* vpart = hat[0]->find_slot("vpart");
  REQUIRE(subj);
  REQUIRE(vpart);
  CHECK((subj->min == 1 && subj->max == 1));
  CHECK((vpart->min == 1 && vpart->max == 1));
  CHECK(hat[0]->find_slot("obj") == nullptr);
  CHECK(mentions(vpart->filler, parse_formula("(not (feat final))")));
  CHECK(mentions(vpart->filler, parse_formula("(foll subj obj)")));

  auto gesehen = lookup(g, "gesehen");
  REQUIRE(gesehen.size() == 1);
  REQUIRE(gesehen[0]->find_slot("obj"));
  CHECK(gesehen[0]->find_slot("obj")->float_set == std::vector<std::string>{"vpart"});

  auto mann = lookup(g, "Mann");
  REQUIRE(mann.size() == 1);
  CHECK(mann[0]->word_class == "N");
  REQUIRE(mann[0]->find_slot("det"));
  CHECK(mann[0]->find_slot("det")->min == 1);
  CHECK(mann[0]->find_slot("det")->max == 1);

  CHECK(lookup(g, "xyzzy").empty());
  CHECK(lookup(g, "mann").empty());  // case-sensitive
  CHECK(lookup(testkit::anbncn(), "a").size() == 2);
}

TEST_CASE("effective constraint") {
  Grammar g = load_grammar(R"((grammar
    (classes V N)
    (features a b)
    (axiom V (feat a))
    (word "v" :class V :constraint (feat b))
    (word "w" :class V)
    (word "n" :class N :constraint (feat b))))");
  CHECK(effective_constraint(g.entries[0], g) == Formula::conj({Formula::feature("a"), Formula::feature("b")}));
  CHECK(effective_constraint(g.entries[1], g) == Formula::feature("a"));
  CHECK(effective_constraint(g.entries[2], g) == Formula::feature("b"));
  CHECK(effective_constraint(*lookup(testkit::german(), "hat")[0], testkit::german()) == testkit::german().axioms.at("Vfin"));
}

TEST_CASE("grammar loading errors") {
  SUBCASE("undeclared dependency type") {
    try {
      load_grammar("(grammar (classes N) (word \"x\" :class N :constraint (dep subj (class N))))");
      FAIL("expected an error");
    } catch (const GrammarError& e) {
      CHECK(e.symbol() == "subj");
    }
  }
  SUBCASE("empty grammar") {
    Grammar g = load_grammar("(grammar)");
    CHECK(g.classes.empty());
    CHECK(g.entries.empty());
  }
  SUBCASE("syntax errors carry line and column") {
    try {
      load_grammar("(grammar\n  (classes N)\n  (word \"x\" :class N :domains two))");
      FAIL("expected an error");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 31);
    }
    CHECK_THROWS_AS(load_grammar("(grammar (classes N)"), SyntaxError);
    CHECK_THROWS_AS(load_grammar("(grammar \"unterminated)"), SyntaxError);
    CHECK_THROWS_AS(load_grammar(""), SyntaxError);
  }
  SUBCASE("duplicate surface and class") {
    CHECK_THROWS_AS(load_grammar("(grammar (classes N) (word \"x\" :class N) (word \"x\" :class N))"), GrammarError);
    CHECK_NOTHROW(load_grammar("(grammar (classes N M) (word \"x\" :class N) (word \"x\" :class M))"));
  }
  SUBCASE("entry consistency") {
    CHECK_THROWS_AS(load_grammar("(grammar (classes N) (features a) (word \"x\" :class N :fixed (a) :free (a)))"), GrammarError);
    CHECK_THROWS_AS(load_grammar("(grammar (classes N) (word \"x\" :class N :domains 1 :constraint (filled 2)))"), GrammarError);
    CHECK_THROWS_AS(load_grammar("(grammar (classes N) (axiom N (single 2)) (word \"x\" :class N))"), GrammarError);
    CHECK_THROWS_AS(load_grammar("(grammar (classes N) (deps d) (word \"x\" :class N (slot d) (slot d)))"), GrammarError);
    CHECK_THROWS_AS(load_grammar("(grammar (classes N) (deps d) (word \"x\" :class N (slot d :float (e))))"), GrammarError);
    CHECK_THROWS_AS(load_grammar("(grammar (classes N) (deps d) (word \"x\" :class N (slot d :min 2 :max 1)))"), SyntaxError);
    CHECK_THROWS_AS(load_grammar("(grammar (classes N) (word \"x\" :class M))"), GrammarError);
    CHECK_THROWS_AS(load_grammar("(grammar (word \"x\"))"), SyntaxError);
  }
}

TEST_CASE("slot bounds default to exactly one") {
  Grammar g = load_grammar(R"((grammar (classes N) (deps d e f)
    (word "x" :class N (slot d) (slot e :min 0) (slot f :max 3))))");
  const auto& s = g.entries[0].slots;
  CHECK((s[0].min == 1 && s[0].max == 1));
  CHECK((s[1].min == 0 && s[1].max == 1));
  CHECK((s[2].min == 1 && s[2].max == 3));
}

TEST_CASE("grammar text round trip") {
  CHECK(load_grammar(serialize_grammar(testkit::german())) == testkit::german());
  CHECK(load_grammar(serialize_grammar(testkit::anbncn())) == testkit::anbncn());
  CHECK(load_grammar(serialize_grammar(load_grammar("(grammar)"))) == load_grammar("(grammar)"));
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    Grammar g = testkit::random_mini_case(rng).grammar;
    CHECK_NOTHROW(check_grammar(g));
    std::string text = serialize_grammar(g);
    INFO(text);
    CHECK(load_grammar(text) == g);
  }
}

TEST_CASE("desugared connectives evaluate like their definitions") {
  auto s = testkit::fig1();
  std::mt19937 rng(23);
  testkit::Symbols sym{{"Vfin", "N"}, {"middle", "initial", "V2"}, {"subj", "obj", "vpart"}};
  for (int i = 0; i < 300; ++i) {
    Formula a = testkit::random_formula(rng, 2, sym, 1);
    Formula b = testkit::random_formula(rng, 2, sym, 1);
    for (int w = 0; w < 6; ++w) {
      bool va = satisfies(s, w, a);
      bool vb = satisfies(s, w, b);
      CHECK(satisfies(s, w, Formula::equiv(a, b)) == (va == vb));
      CHECK(satisfies(s, w, Formula::implies(a, b)) == (!va || vb));
      CHECK(satisfies(s, w, Formula::disj({a, b})) == (va || vb));
    }
  }
}
