#include <string>
#include <thread>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "subshift/errors.hpp"
#include "subshift/oracle.hpp"
#include "subshift/substitution.hpp"
#include "support/test_oracles.hpp"

using namespace subshift;
using testsupport::w;

namespace {

const char* kRunning = "0 -> 141 ; 1 -> 00 ; 2 -> 242 ; 3 -> 5435 ; 4 -> 5 ; 5 -> 6 ; 6 -> 5";
const char* kChacon = "0 -> 0010 ; 1 -> 1";

}  // namespace

TEST_CASE("parsing the running example") {
  const Substitution sub = Substitution::parse(kRunning);
  REQUIRE(sub.size() == 7);
  CHECK(sub.token(0) == "0");
  CHECK(sub.token(6) == "6");
  CHECK(sub.image(0) == w("141"));
  CHECK(sub.image(3) == w("5435"));
  CHECK(sub.image(6) == w("5"));
}

TEST_CASE("parsing accepts newline separated rules and json-equivalent forms") {
  const Substitution a = Substitution::parse("0 -> 0010\n1 -> 1\n");
  const Substitution b = Substitution::parse(kChacon);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.token(static_cast<Letter>(i)) == b.token(static_cast<Letter>(i)));
    CHECK(a.image(static_cast<Letter>(i)) == b.image(static_cast<Letter>(i)));
  }
}

TEST_CASE("parsing multi-character tokens") {
  const Substitution sub = Substitution::parse("go -> go stop go\nstop -> stop");
  REQUIRE(sub.size() == 2);
  CHECK(sub.token(0) == "go");
  CHECK(sub.image(0) == Word{0, 1, 0});
  CHECK(sub.format(sub.image(0)) == "go stop go");

  // Without internal whitespace a multi-character alphabet keeps the image
  // as one token.
  const Substitution single = Substitution::parse("ab -> ab");
  REQUIRE(single.size() == 1);
  CHECK(single.image(0) == Word{0});
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH(Substitution::parse("0 -> \n1 -> 1"),
                    Catch::Matchers::ContainsSubstring("erasing morphism unsupported"));
  CHECK_THROWS_WITH(Substitution::parse("0 -> 01\n0 -> 0\n1 -> 1"),
                    Catch::Matchers::ContainsSubstring("duplicate rule"));
  CHECK_THROWS_WITH(Substitution::parse("0 -> 12\n1 -> 1"),
                    Catch::Matchers::ContainsSubstring("image letter without a rule"));
  CHECK_THROWS_AS(Substitution::parse("   "), ParseError);
  CHECK_THROWS_AS(Substitution::parse("0 <- 1"), ParseError);
}

TEST_CASE("morphism application") {
  const Substitution chacon = Substitution::parse(kChacon);
  CHECK(chacon.apply(w("0")) == w("0010"));
  CHECK(chacon.apply(Word{}) == Word{});

  const Substitution sub = Substitution::parse(kRunning);
  CHECK(sub.apply(w("54")) == w("65"));
  CHECK_THROWS_AS(sub.apply(Word{9}), PreconditionError);
}

TEST_CASE("power images") {
  const Substitution sub = Substitution::parse(kRunning);
  CHECK(sub.power_image(0, 2) == w("00500"));
  CHECK(sub.power_image(3, 0) == w("3"));
  CHECK(sub.power_image(0, 1) == w("141"));

  const Substitution chacon = Substitution::parse(kChacon);
  CHECK(chacon.power_image(0, 2) == w("0010001010010"));
  CHECK(chacon.power_image(1, 3) == w("1"));
  CHECK(chacon.apply_power(w("01"), 2) == w("00100010100101"));
}

TEST_CASE("power images are safe to memoize concurrently") {
  const Substitution sub = Substitution::parse(kRunning);
  const Word expected = sub.power_image(0, 8);
  std::vector<std::thread> pool;
  std::vector<Word> results(4);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&sub, &results, t] { results[static_cast<std::size_t>(t)] = sub.power_image(0, 8); });
  for (std::thread& t : pool) t.join();
  for (const Word& r : results) CHECK(r == expected);
}

TEST_CASE("letter classification of the named substitutions") {
  SECTION("running example") {
    const Substitution sub = Substitution::parse(kRunning);
    const LetterClassification cls = classify(sub);
    CHECK(cls.bounded == LetterSet{4, 5, 6});
    CHECK(cls.growing == LetterSet{0, 1, 2, 3});
    CHECK(cls.periodic == LetterSet{5, 6});
    CHECK(cls.preperiodic == LetterSet{4});
    CHECK(cls.left_isolated == LetterSet{3});
    CHECK(cls.right_isolated == LetterSet{3});
    CHECK(cls.non_isolated == LetterSet{0, 1, 2});
    CHECK_FALSE(is_tame(cls));
  }

  SECTION("Chacon") {
    const LetterClassification cls = classify(Substitution::parse(kChacon));
    CHECK(cls.bounded == LetterSet{1});
    CHECK(cls.periodic == LetterSet{1});
    CHECK(cls.preperiodic == LetterSet{});
    CHECK(cls.left_isolated.empty());
    CHECK(cls.right_isolated.empty());
    CHECK(is_tame(cls));
  }

  SECTION("Thue-Morse has no bounded letters") {
    const LetterClassification cls = classify(Substitution::parse("0 -> 01\n1 -> 10"));
    CHECK(cls.bounded.empty());
    CHECK(cls.growing == LetterSet{0, 1});
    CHECK(is_tame(cls));
  }

  SECTION("one-sided isolation") {
    const LetterClassification cls = classify(Substitution::parse("0 -> 0001\n1 -> 1"));
    CHECK(cls.left_isolated.empty());
    CHECK(cls.right_isolated == LetterSet{0});
    CHECK_FALSE(is_tame(cls));
  }
}

TEST_CASE("restriction to a closed subalphabet") {
  const Substitution sub = Substitution::parse(kRunning);

  SECTION("first power") {
    const Substitution r = restrict(sub, 1, LetterSet{2, 4, 5, 6});
    REQUIRE(r.size() == 4);
    CHECK(r.format(r.image(r.letter("2"))) == "242");
    CHECK(r.format(r.image(r.letter("4"))) == "5");
    CHECK(r.format(r.image(r.letter("5"))) == "6");
    CHECK(r.format(r.image(r.letter("6"))) == "5");
  }

  SECTION("second power") {
    const Substitution r = restrict(sub, 2, LetterSet{0, 5});
    REQUIRE(r.size() == 2);
    CHECK(r.format(r.image(r.letter("0"))) == "00500");
    CHECK(r.format(r.image(r.letter("5"))) == "5");
  }

  SECTION("closure violation") {
    CHECK_THROWS_WITH(restrict(sub, 1, LetterSet{0}),
                      Catch::Matchers::ContainsSubstring("restriction not closed"));
  }
}

TEST_CASE("classification matches the growth oracle on a large corpus") {
  testsupport::CorpusGen gen(0xC0FFEEu);
  for (int trial = 0; trial < 10000; ++trial) {
    const Substitution sub = gen.next();
    const LetterClassification cls = classify(sub);

    // Partitions hold by construction and must stay exact.
    REQUIRE(cls.bounded.size() + cls.growing.size() == sub.size());
    REQUIRE(unite(cls.periodic, cls.preperiodic) == cls.bounded);
    REQUIRE(intersect(cls.periodic, cls.preperiodic).empty());
    REQUIRE(unite(cls.left_isolated, cls.right_isolated).size() +
                cls.non_isolated.size() ==
            cls.growing.size());
    REQUIRE(is_subset(cls.left_isolated, cls.growing));
    REQUIRE(is_subset(cls.right_isolated, cls.growing));

    // Independent growth-based reclassification.
    REQUIRE(bounded_letters_by_growth(sub) == cls.bounded);

    // Periodic letters keep single-letter images at every tested depth.
    for (Letter a : cls.periodic)
      for (int n = 1; n <= 8; ++n) REQUIRE(sub.power_image(a, n).size() == 1);

    // Bounded letters revisit a finite set of image words.
    for (Letter a : cls.bounded) {
      std::vector<Word> seen{Word{a}};
      Word cur{a};
      bool repeated = false;
      for (int n = 1; n <= 64 && !repeated; ++n) {
        cur = sub.apply(cur);
        repeated = std::find(seen.begin(), seen.end(), cur) != seen.end();
        seen.push_back(cur);
      }
      REQUIRE(repeated);
    }
  }
}
