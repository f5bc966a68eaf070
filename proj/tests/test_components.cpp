#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "subshift/components.hpp"
#include "subshift/errors.hpp"
#include "subshift/substitution.hpp"
#include "support/test_oracles.hpp"

using namespace subshift;
using testsupport::w;

namespace {

const char* kRunning = "0 -> 141 ; 1 -> 00 ; 2 -> 242 ; 3 -> 5435 ; 4 -> 5 ; 5 -> 6 ; 6 -> 5";

using Provenance = std::vector<std::pair<Letter, Side>>;

}  // namespace

TEST_CASE("running example census") {
  const Substitution sub = Substitution::parse(kRunning);
  const ComponentCensus c = census(sub);

  REQUIRE(c.tmc == 3);
  REQUIRE(c.wmc == 2);
  CHECK(c.mc == 5);

  CHECK(c.tame[0].growing_part.letters == LetterSet{0});
  CHECK(c.tame[0].reduced_alphabet == LetterSet{0, 5});
  CHECK(c.tame[0].power == 2);
  CHECK(c.tame[1].growing_part.letters == LetterSet{1});
  CHECK(c.tame[1].reduced_alphabet == LetterSet{1, 4, 6});
  CHECK(c.tame[1].power == 2);
  CHECK(c.tame[2].growing_part.letters == LetterSet{2});
  CHECK(c.tame[2].reduced_alphabet == LetterSet{2, 4, 5, 6});
  CHECK(c.tame[2].power == 1);

  CHECK(c.wild[0].period_word == w("5566"));
  CHECK(c.wild[0].provenance == Provenance{{3, Side::left}});
  CHECK(c.wild[1].period_word == w("56"));
  CHECK(c.wild[1].provenance == Provenance{{3, Side::right}});

  CHECK_FALSE(essentially_minimal(c));
  CHECK(check_bounds(classify(sub), c));
}

TEST_CASE("essentially minimal examples") {
  SECTION("Chacon is tame with one component") {
    const ComponentCensus c = census(Substitution::parse("0 -> 0010\n1 -> 1"));
    REQUIRE(c.tmc == 1);
    CHECK(c.wmc == 0);
    CHECK(c.tame[0].growing_part.letters == LetterSet{0});
    CHECK(c.tame[0].reduced_alphabet == LetterSet{0, 1});
    CHECK(c.tame[0].power == 1);
    CHECK(essentially_minimal(c));
  }

  SECTION("Fibonacci and Thue-Morse are minimal already") {
    for (const char* rules : {"0 -> 01 ; 1 -> 0", "0 -> 01 ; 1 -> 10"}) {
      const ComponentCensus c = census(Substitution::parse(rules));
      REQUIRE(c.mc == 1);
      CHECK(c.tame[0].growing_part.letters == LetterSet{0, 1});
      CHECK(c.tame[0].reduced_alphabet == LetterSet{0, 1});
      CHECK(c.tame[0].power == 1);
    }
  }

  SECTION("a doubly isolated letter leaves a single periodic orbit") {
    const ComponentCensus c = census(Substitution::parse("0 -> 101 ; 1 -> 1"));
    REQUIRE(c.tmc == 0);
    REQUIRE(c.wmc == 1);
    CHECK(c.wild[0].period_word == w("1"));
    CHECK(c.wild[0].provenance == Provenance{{0, Side::left}, {0, Side::right}});
    CHECK(essentially_minimal(c));
  }

  SECTION("one-sided isolation gives the same orbit") {
    const ComponentCensus c = census(Substitution::parse("0 -> 0001 ; 1 -> 1"));
    REQUIRE(c.wmc == 1);
    CHECK(c.tmc == 0);
    CHECK(c.wild[0].period_word == w("1"));
    CHECK(c.wild[0].provenance == Provenance{{0, Side::right}});
  }

  SECTION("the two-letter edge of the mixed family has no tame part") {
    const Substitution sub = Substitution::parse("0 -> 01 ; 1 -> 1");
    const LetterClassification cls = classify(sub);
    CHECK(tame_components(sub, cls).empty());
    const ComponentCensus c = census(sub, cls);
    REQUIRE(c.wmc == 1);
    CHECK(c.wild[0].period_word == w("1"));
  }
}

TEST_CASE("induced dynamics on the components") {
  SECTION("running example: swap plus a fixed point, wild self-loops") {
    const Substitution sub = Substitution::parse(kRunning);
    const LetterClassification cls = classify(sub);
    const ComponentCensus c = census(sub, cls);

    const DynamicsGraph gt = tame_dynamics(sub, cls, c.tame);
    CHECK(gt.kind == DynamicsGraph::Kind::tame);
    CHECK(gt.successor == std::vector<std::size_t>{1, 0, 2});

    const DynamicsGraph gw = wild_dynamics(sub, cls, c.wild);
    CHECK(gw.kind == DynamicsGraph::Kind::wild);
    CHECK(gw.successor == std::vector<std::size_t>{0, 1});
  }

  SECTION("period-two alphabets swap their fixed points") {
    const Substitution sub = Substitution::parse("0 -> 11 ; 1 -> 00");
    const LetterClassification cls = classify(sub);
    const ComponentCensus c = census(sub, cls);
    REQUIRE(c.tmc == 2);
    CHECK(c.tame[0].growing_part.letters == LetterSet{0});
    CHECK(c.tame[0].reduced_alphabet == LetterSet{0});
    CHECK(c.tame[0].power == 2);
    CHECK(c.tame[1].growing_part.letters == LetterSet{1});
    CHECK(tame_dynamics(sub, cls, c.tame).successor ==
          std::vector<std::size_t>{1, 0});
  }

  SECTION("single components loop on themselves") {
    for (const char* rules : {"0 -> 01 ; 1 -> 0", "0 -> 101 ; 1 -> 1"}) {
      const Substitution sub = Substitution::parse(rules);
      const LetterClassification cls = classify(sub);
      const ComponentCensus c = census(sub, cls);
      REQUIRE(c.mc == 1);
      const DynamicsGraph g = c.tmc == 1 ? tame_dynamics(sub, cls, c.tame)
                                         : wild_dynamics(sub, cls, c.wild);
      CHECK(g.successor == std::vector<std::size_t>{0});
    }
  }

  SECTION("periodic orbits over swapped bounded letters trade places") {
    // sigma exchanges the runs of 1 and 2, so the two one-letter orbits
    // swap while the mixed orbit stays put.
    const Substitution sub =
        Substitution::parse("0 -> 213 ; 1 -> 2 ; 2 -> 1 ; 3 -> 0111");
    const LetterClassification cls = classify(sub);
    const ComponentCensus c = census(sub, cls);
    REQUIRE(c.tmc == 0);
    REQUIRE(c.wmc == 3);
    CHECK(c.wild[0].period_word == w("1"));
    CHECK(c.wild[1].period_word == w("12"));
    CHECK(c.wild[2].period_word == w("2"));
    CHECK(wild_dynamics(sub, cls, c.wild).successor ==
          std::vector<std::size_t>{2, 1, 0});
  }
}

TEST_CASE("families meeting the census bounds") {
  SECTION("doubling on k letters fills the |A| bound") {
    for (int k = 1; k <= 5; ++k) {
      const Substitution sub = testsupport::doubling_family(k);
      const LetterClassification cls = classify(sub);
      const ComponentCensus c = census(sub, cls);
      REQUIRE(c.mc == k);
      CHECK(c.wmc == 0);
      for (int i = 0; i < k; ++i) {
        CHECK(c.tame[static_cast<std::size_t>(i)].growing_part.letters ==
              LetterSet{i});
        CHECK(c.tame[static_cast<std::size_t>(i)].reduced_alphabet ==
              LetterSet{i});
        CHECK(c.tame[static_cast<std::size_t>(i)].power == 1);
      }
      CHECK(check_bounds(cls, c));
    }
  }

  SECTION("interleaving with one bounded letter fills |A| - 1") {
    for (int k = 2; k <= 5; ++k) {
      const Substitution sub = testsupport::interleave_family(k);
      const LetterClassification cls = classify(sub);
      const ComponentCensus c = census(sub, cls);
      REQUIRE(c.tmc == k - 1);
      CHECK(c.wmc == 0);
      for (int i = 1; i < k; ++i) {
        const TameComponent& t = c.tame[static_cast<std::size_t>(i - 1)];
        CHECK(t.growing_part.letters == LetterSet{i});
        CHECK(t.reduced_alphabet == LetterSet{0, i});
        CHECK(t.power == 1);
      }
      CHECK(check_bounds(cls, c));
    }
  }

  SECTION("two-sided flanks fill 2|A| - 4 with wild components only") {
    for (int k = 3; k <= 5; ++k) {
      const Substitution sub = testsupport::flank_family(k);
      const LetterClassification cls = classify(sub);
      const ComponentCensus c = census(sub, cls);
      CHECK(c.tmc == 0);
      REQUIRE(c.wmc == 2 * k - 4);
      // Orbit words are 0^i 1 for i up to 2k-5, already canonical, listed
      // longest first under word order.
      for (int j = 0; j < c.wmc; ++j) {
        Word expect(static_cast<std::size_t>(2 * k - 5 - j), 0);
        expect.push_back(1);
        CHECK(c.wild[static_cast<std::size_t>(j)].period_word == expect);
      }
      CHECK(check_bounds(cls, c));
      CHECK(wild_dynamics(sub, cls, c.wild).successor.size() ==
            static_cast<std::size_t>(2 * k - 4));
    }
  }
}

TEST_CASE("census refuses bounded-only substitutions") {
  const Substitution sub = Substitution::parse("0 -> 1 ; 1 -> 0");
  CHECK_THROWS_AS(census(sub), PreconditionError);
  CHECK_THROWS_WITH(census(sub),
                    Catch::Matchers::ContainsSubstring("no growing letters"));
}

TEST_CASE("tame components certify primitivity and avoid isolated letters") {
  testsupport::CorpusGen gen(0xC0117EC5u);
  int analyzed = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const Substitution sub = gen.next();
    const LetterClassification cls = classify(sub);
    if (cls.growing.empty()) continue;
    ++analyzed;
    const LetterSet isolated = unite(cls.left_isolated, cls.right_isolated);
    for (const TameComponent& t : tame_components(sub, cls)) {
      REQUIRE(is_l_primitive(sub, cls, t.reduced_alphabet, t.power));
      REQUIRE(intersect(t.reduced_alphabet, isolated).empty());
      REQUIRE(intersect(t.reduced_alphabet, cls.growing) ==
              t.growing_part.letters);
      REQUIRE(t.power == t.growing_part.period);
    }
  }
  REQUIRE(analyzed > 2500);
}

TEST_CASE("corpus census invariants") {
  testsupport::CorpusGen gen(0x5EED5EEDu);
  int analyzed = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const Substitution sub = gen.next();
    const LetterClassification cls = classify(sub);
    if (cls.growing.empty()) continue;
    ++analyzed;

    const ComponentCensus c = census(sub, cls);
    REQUIRE(c.mc >= 1);
    REQUIRE(check_bounds(cls, c));

    // Tame and wild families live on disjoint alphabets.
    for (const TameComponent& t : c.tame)
      REQUIRE_FALSE(intersect(t.reduced_alphabet, cls.growing).empty());
    for (const WildComponent& wc : c.wild) {
      REQUIRE_FALSE(wc.period_word.empty());
      REQUIRE(is_subset(alphabet_of(wc.period_word), cls.bounded));
      REQUIRE(canonical_rotation(primitive_root(wc.period_word)) ==
              wc.period_word);
      REQUIRE_FALSE(wc.provenance.empty());
    }

    // Both induced maps are permutations. The wild successor must carry
    // each periodic orbit onto the orbit of its sigma-image.
    const DynamicsGraph gt = tame_dynamics(sub, cls, c.tame);
    REQUIRE(gt.successor.size() == c.tame.size());
    const DynamicsGraph gw = wild_dynamics(sub, cls, c.wild);
    REQUIRE(gw.successor.size() == c.wild.size());
    std::vector<std::size_t> seen = gw.successor;
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) REQUIRE(seen[i] == i);
    for (std::size_t i = 0; i < gw.successor.size(); ++i) {
      const Word image =
          canonical_rotation(primitive_root(sub.apply(c.wild[i].period_word)));
      REQUIRE(c.wild[gw.successor[i]].period_word == image);
    }
  }
  REQUIRE(analyzed > 2500);
}
