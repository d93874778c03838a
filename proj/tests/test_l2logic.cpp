#include "gaugeint/l2logic.hpp"
#include "l2_gen.hpp"

#include <doctest.h>

#include <set>

using namespace gaugeint;
using testsupport::Gen;
using namespace testsupport;

namespace {

FormulaP randomFormula(Gen& g, int depth) {
  FormulaP body = randomBounded(g, depth, kNumVars);
  int wraps = static_cast<int>(g.index(4));
  const K kinds[] = {K::ForallNum, K::ExistsNum, K::ForallSet, K::ExistsSet};
  for (int i = 0; i < wraps; ++i) {
    K k = kinds[g.index(4)];
    bool set = k == K::ForallSet || k == K::ExistsSet;
    body = mkQuant(k, set ? "X" : kNumVars[g.index(3)], body);
  }
  return body;
}

std::string hier(const std::string& text) { return classify(parseFormula(text)).str(); }

// Widens spaces and pads the ends.
std::string noisy(Gen& g, const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == ' ') {
      out += std::string(1 + g.index(3), ' ');
    } else {
      out += c;
    }
  }
  return g.coin() ? "  " + out + " " : out;
}

}  // namespace

TEST_CASE("parse examples") {
  FormulaP a = parseFormula("A n. ~(n+1=0)");
  REQUIRE(a->kind == K::ForallNum);
  CHECK(a->var == "n");
  REQUIRE(a->a->kind == K::Not);
  CHECK(sameFormula(a->a->a, mkAtom(K::Eq, mkPlus(mkVar("n"), mkOne()), mkZero())));

  FormulaP b = parseFormula("(E x < 5)(x*x = 4)");
  REQUIRE(b->kind == K::BoundedExists);
  CHECK(sameTerm(b->t, mkNumeral(5)));
  CHECK(sameFormula(b->a, mkAtom(K::Eq, mkTimes(mkVar("x"), mkVar("x")), mkNumeral(4))));

  FormulaP c = parseFormula("E X. A n. (n in X <-> n < 3)");
  REQUIRE(c->kind == K::ExistsSet);
  CHECK(c->var == "X");
  REQUIRE(c->a->kind == K::ForallNum);
  CHECK(c->a->a->kind == K::Iff);

  CHECK(sameTerm(mkNumeral(0), mkZero()));
  CHECK(printTerm(mkNumeral(3)) == "((1+1)+1)");
  // Numerals are sugar for sums of ones.
  CHECK(sameFormula(parseFormula("x = 2"), parseFormula("x = 1+1")));
}

TEST_CASE("parse errors carry positions") {
  for (std::string bad : {"A n. (n+1 = ", "x = = y", "n in x", "A X. X < 1", "(E x < x) (x = 0)", "x < y )",
                          "", "E . x = 0", "x & y"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parseFormula(bad), L2ParseError);
  }
  try {
    parseFormula("x = y +");
    FAIL("expected a parse error");
  } catch (const L2ParseError& e) {
    CHECK(e.position >= 6);
    CHECK(e.position <= 7);
  }
}

TEST_CASE("round trip over a 200-formula corpus") {
  std::vector<std::string> corpus = kAxioms;
  corpus.push_back("(E x < 5)(x*x = 4)");
  corpus.push_back("E X. A n. (n in X <-> n < 3)");
  corpus.push_back("(A x < 3)(x < 4)");
  Gen g(1);
  while (corpus.size() < 200) corpus.push_back(noisy(g, printFormula(randomFormula(g, 4))));
  REQUIRE(corpus.size() == 200);
  for (const auto& text : corpus) {
    CAPTURE(text);
    FormulaP f = parseFormula(text);
    std::string printed = printFormula(f);
    REQUIRE(printed == normalize(text));
    REQUIRE(sameFormula(parseFormula(printed), f));
    REQUIRE(normalize(printed) == printed);
  }
  // Generated syntax trees survive printing unchanged.
  for (int i = 0; i < 500; ++i) {
    FormulaP f = randomFormula(g, 5);
    REQUIRE(sameFormula(parseFormula(printFormula(f)), f));
  }
}

TEST_CASE("classification examples") {
  for (const auto& ax : kAxioms) CHECK(hier(ax) == "Pi 0 1");
  CHECK(hier("(A x < 3)(x < 4)") == "Sigma/Pi 0 0");
  CHECK(hier("E X. A n. (n in X <-> n < 3)") == "Sigma 1 1");
  CHECK(hier("E y. E z. (y = z)") == "Sigma 0 1");
  CHECK(hier("A x. E y. (x < y)") == "Pi 0 2");
  CHECK(hier("E x. A y. E z. (x < y + z)") == "Sigma 0 3");
  CHECK(hier("A X. E Y. (0 in X)") == "Pi 1 2");
  CHECK(hier("A X. (0 in X)") == "Pi 1 1");
  // Bounded quantifiers never raise the level.
  CHECK(hier("A x. (E y < x) (A z < y) (z = 0)") == "Pi 0 1");
  // An unbounded quantifier under a connective is outside the literal forms.
  HierClass u = classify(parseFormula("~(A x. x = 0)"));
  CHECK(u.kind == HierClass::Kind::Unclassified);
  CHECK_FALSE(u.reason.empty());
  CHECK(classify(parseFormula("(E x. x = 0) & (0 = 0)")).kind == HierClass::Kind::Unclassified);
  CHECK(onlyBoundedQuantifiers(parseFormula("(E x < 5)(x*x = 4)")));
  CHECK_FALSE(onlyBoundedQuantifiers(parseFormula("A n. n = n")));
}

TEST_CASE("a dummy existential moves Pi level n to Sigma level n+1") {
  Gen g(2);
  for (int i = 0; i < 300; ++i) {
    FormulaP f = randomBounded(g, 3, kNumVars);
    std::size_t levels = 1 + g.index(4);
    // Alternate blocks ending in a universal one.
    for (std::size_t l = 0; l < levels; ++l) {
      K k = (levels - 1 - l) % 2 == 0 ? K::ForallNum : K::ExistsNum;
      std::size_t block = 1 + g.index(2);
      for (std::size_t b = 0; b < block; ++b) f = mkQuant(k, kNumVars[g.index(3)], f);
    }
    HierClass pi = classify(f);
    REQUIRE(pi.kind == HierClass::Kind::Pi);
    REQUIRE(pi.level == levels);
    HierClass sigma = classify(mkQuant(K::ExistsNum, "w", f));
    REQUIRE(sigma.kind == HierClass::Kind::Sigma);
    REQUIRE(sigma.level == levels + 1);
    REQUIRE(sigma.order == 0);
    // Set blocks on top move into the analytical hierarchy.
    HierClass an = classify(mkQuant(K::ForallSet, "Y", f));
    REQUIRE(an.kind == HierClass::Kind::Pi);
    REQUIRE(an.order == 1);
    REQUIRE(an.level == 1);
  }
}

TEST_CASE("universal closure") {
  CHECK(printFormula(universalClosure(parseFormula("x < y"))) == normalize("A x. A y. x < y"));
  CHECK(printFormula(universalClosure(parseFormula("n in X"))) == normalize("A n. A X. n in X"));
  FormulaP closed = parseFormula(kAxioms[1]);
  CHECK(sameFormula(universalClosure(closed), closed));
  Gen g(3);
  for (int i = 0; i < 200; ++i) {
    FormulaP c = universalClosure(randomFormula(g, 3));
    REQUIRE(freeNumVars(c).empty());
    REQUIRE(freeSetVars(c).empty());
  }
}

TEST_CASE("bounded evaluation") {
  CHECK(evalDelta00(parseFormula("(E x < 5)(x*x = 4)"), {}, {}));
  CHECK_FALSE(evalDelta00(parseFormula("0 = 1"), {}, {}));
  CHECK(evalDelta00(parseFormula("(A x < 3)(x < 3)"), {}, {}));
  CHECK(evalDelta00(parseFormula("x in X"), {{"x", 5}}, {{"X", parseFiniteSet("{1,2,5}")}}));
  CHECK_THROWS_AS(evalDelta00(parseFormula("x = 0"), {}, {}), L2EvalError);
  CHECK_THROWS_AS(evalDelta00(parseFormula("0 in X"), {}, {}), L2EvalError);
  CHECK_THROWS_AS(evalDelta00(parseFormula("A n. n = n"), {}, {}), L2EvalError);
  CHECK(evalTerm(parseFormula("x*(y+2) = 0")->s, {{"x", 3}, {"y", 4}}) == 18);
}

TEST_CASE("bounded evaluation matches the truth oracle exhaustively over small values") {
  Gen g(4);
  std::vector<std::set<Nat>> sets = {{}, {0}, {1, 2}, {0, 2, 3, 5}};
  std::size_t cases = 0;
  for (int i = 0; i < 160; ++i) {
    FormulaP f = randomBounded(g, 4, kNumVars);
    for (int x = 0; x < 3; ++x) {
      for (int y = 0; y < 3; ++y) {
        for (int z = 0; z < 3; ++z) {
          for (const auto& s : sets) {
            NumAssign num{{"x", x}, {"y", y}, {"z", z}};
            SetAssign sa{{"X", [&s](const Nat& n) { return s.count(n) > 0; }}};
            REQUIRE(evalDelta00(f, num, sa) == truth(f, num, s));
            ++cases;
          }
        }
      }
    }
  }
  CHECK(cases >= 10000);
}

TEST_CASE("Sigma01 witness search") {
  Sigma01Result two = searchSigma01(parseFormula("E y. (y + y = 4)"), 100);
  REQUIRE(two.found);
  REQUIRE(two.witness.size() == 1);
  CHECK(two.witness[0].second == 2);
  for (int b : {0, 1, 10, 1000}) CHECK_FALSE(searchSigma01(parseFormula("E y. (y < 0)"), b).found);

  FormulaP pair = parseFormula("E y. E z. (y = z + z + 1) & (y < 4)");
  Sigma01Result r = searchSigma01(pair, 1000);
  REQUIRE(r.found);
  REQUIRE(r.witness.size() == 2);
  std::pair<Nat, Nat> got{r.witness[0].second, r.witness[1].second};
  CHECK((got == std::pair<Nat, Nat>{1, 0} || got == std::pair<Nat, Nat>{3, 1}));
  Sigma01Result again = searchSigma01(pair, 1000);
  CHECK(again.witness == r.witness);
  CHECK_THROWS(searchSigma01(parseFormula("A y. y = y"), 10));

  // Every witness re-verifies.
  Gen g(5);
  std::size_t found = 0;
  for (int i = 0; i < 200; ++i) {
    FormulaP body = randomBounded(g, 3, kNumVars);
    FormulaP f = mkQuant(K::ExistsNum, "x", mkQuant(K::ExistsNum, "y", body));
    NumAssign num{{"z", Nat(g.index(3))}};
    SetAssign sa{{"X", parseFiniteSet("{0,2,3}")}};
    Sigma01Result w = searchSigma01(f, 200, num, sa);
    if (!w.found) continue;
    ++found;
    for (const auto& [v, n] : w.witness) num[v] = n;
    REQUIRE(evalDelta00(body, num, sa));
  }
  CHECK(found > 50);
}

TEST_CASE("finite set literals") {
  auto s = parseFiniteSet("{1,2,5}");
  CHECK(s(1));
  CHECK(s(5));
  CHECK_FALSE(s(3));
  CHECK_FALSE(parseFiniteSet("{}")(0));
  CHECK(parseFiniteSet(" { 7 } ")(7));
  CHECK_THROWS(parseFiniteSet("{1,,2}"));
  CHECK_THROWS(parseFiniteSet("1,2"));
}
