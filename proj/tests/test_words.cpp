#include <algorithm>
#include <map>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "subshift/errors.hpp"
#include "subshift/words.hpp"
#include "support/test_oracles.hpp"

using namespace subshift;
using testsupport::w;

TEST_CASE("letter sets behave as ordered sets") {
  LetterSet s;
  CHECK(s.empty());
  s.insert(5);
  s.insert(2);
  s.insert(5);
  CHECK(s.size() == 2);
  CHECK(s.contains(2));
  CHECK(s.contains(5));
  CHECK_FALSE(s.contains(3));
  CHECK(s.letters() == std::vector<Letter>{2, 5});
  CHECK(s.min() == 2);
  s.erase(2);
  CHECK(s.letters() == std::vector<Letter>{5});

  const LetterSet a{0, 1, 2};
  const LetterSet b{1, 2, 3};
  CHECK(unite(a, b) == LetterSet{0, 1, 2, 3});
  CHECK(intersect(a, b) == LetterSet{1, 2});
  CHECK(difference(a, b) == LetterSet{0});
  CHECK(is_subset(LetterSet{1, 2}, a));
  CHECK_FALSE(is_subset(a, b));
  CHECK(alphabet_of(w("141")) == LetterSet{1, 4});
}

TEST_CASE("concatenation of word families") {
  CHECK(concat_family({}) == Word{});
  CHECK(concat_family({w("54")}) == w("54"));
  CHECK(concat_family({w("56"), w("65")}) == w("5665"));
  CHECK(concat(w("5"), w("665"), w("54")) == w("566554"));
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root(w("0101")) == w("01"));
  CHECK(primitive_root(w("5665")) == w("5665"));
  CHECK(primitive_root(w("000")) == w("0"));
  CHECK(primitive_root(w("5")) == w("5"));
  CHECK(is_primitive(w("56")));
  CHECK_FALSE(is_primitive(w("5656")));
  CHECK_THROWS_AS(primitive_root(Word{}), PreconditionError);

  // Fooling case for the naive period test: "0100" has border-derived
  // period 3 which does not divide 4, so the word is primitive.
  CHECK(primitive_root(w("0100")) == w("0100"));
}

TEST_CASE("primitive roots agree with divisor enumeration") {
  std::mt19937_64 rng(20260816u);
  for (int trial = 0; trial < 4000; ++trial) {
    const Word u = testsupport::random_word(rng, 3, 14);
    CHECK(primitive_root(u) == testsupport::primitive_root_brute(u));
  }
}

TEST_CASE("powers of a primitive word recover the root") {
  std::mt19937_64 rng(7u);
  for (int trial = 0; trial < 2000; ++trial) {
    Word u = testsupport::random_word(rng, 3, 8);
    u = primitive_root(u);
    std::uniform_int_distribution<std::size_t> k_dist(1, 4);
    const Word p = word_power(u, k_dist(rng));
    CHECK(primitive_root(p) == u);
  }
}

TEST_CASE("cyclic equality examples") {
  CHECK(cyclic_equal(w("01"), w("10")));
  CHECK(cyclic_equal(w("5665"), w("6556")));
  CHECK_FALSE(cyclic_equal(w("5665"), w("5656")));
  CHECK_FALSE(cyclic_equal(w("56"), w("566")));
  CHECK(cyclic_equal(Word{}, Word{}));
}

TEST_CASE("canonical rotation examples") {
  CHECK(canonical_rotation(w("10")) == w("01"));
  CHECK(canonical_rotation(w("5665")) == w("5566"));
  CHECK(canonical_rotation(w("0")) == w("0"));
  CHECK(canonical_rotation(w("56")) == w("56"));
  CHECK_THROWS_AS(canonical_rotation(Word{}), PreconditionError);
}

// Exhaustive over the 2-letter words up to length 12: the canonical form is
// a rotation, two words are cyclically equal iff their canonical forms match,
// and every rotation class maps onto a single canonical representative.
TEST_CASE("canonical rotation classifies all short binary words") {
  std::map<Word, Word> representative;
  for (int len = 1; len <= 12; ++len) {
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      Word u(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i) u[static_cast<std::size_t>(i)] = (bits >> i) & 1u;
      const Word canon = canonical_rotation(u);
      REQUIRE(cyclic_equal(u, canon));
      REQUIRE(canon == testsupport::least_rotation_brute(u));
      for (const Word& r : testsupport::rotations(u))
        REQUIRE(canonical_rotation(r) == canon);
      auto [it, inserted] = representative.emplace(canon, u);
      if (!inserted) REQUIRE(cyclic_equal(u, it->second));
    }
  }
}

TEST_CASE("cyclic equality agrees with rotation enumeration") {
  std::mt19937_64 rng(99u);
  for (int trial = 0; trial < 4000; ++trial) {
    const Word u = testsupport::random_word(rng, 2, 10);
    const Word v = testsupport::random_word(rng, 2, 10);
    CHECK(cyclic_equal(u, v) == testsupport::cyclic_equal_brute(u, v));
  }
}

TEST_CASE("boundary decomposition splits off bounded flanks") {
  const LetterSet growing{0, 1};

  SECTION("two growing occurrences") {
    const auto d = boundary_decompose(w("22012001"), growing);
    CHECK(d.lb == w("22"));
    CHECK(d.lc == 0);
    CHECK(d.middle == w("1200"));
    CHECK(d.rc == 1);
    CHECK(d.rb == Word{});
    CHECK_FALSE(d.single_growing);
    CHECK(d.reassemble() == w("22012001"));
  }

  SECTION("single growing occurrence") {
    const auto d = boundary_decompose(w("202"), growing);
    CHECK(d.lb == w("2"));
    CHECK(d.lc == 0);
    CHECK(d.rc == 0);
    CHECK(d.rb == w("2"));
    CHECK(d.single_growing);
    CHECK(d.reassemble() == w("202"));
  }

  SECTION("no bounded letters at all") {
    const auto d = boundary_decompose(w("141"), LetterSet{0, 1, 2, 3});
    CHECK(d.lb == Word{});
    CHECK(d.lc == 1);
    CHECK(d.middle == w("4"));
    CHECK(d.rc == 1);
    CHECK(d.rb == Word{});
    CHECK(d.reassemble() == w("141"));
  }

  SECTION("fully bounded input is rejected") {
    CHECK_THROWS_AS(boundary_decompose(w("222"), growing), PreconditionError);
  }
}

TEST_CASE("boundary decomposition reassembles random words") {
  std::mt19937_64 rng(123u);
  const LetterSet growing{0, 1};
  for (int trial = 0; trial < 3000; ++trial) {
    const Word u = testsupport::random_word(rng, 4, 16);
    const bool has_growing =
        std::any_of(u.begin(), u.end(), [&](Letter a) { return growing.contains(a); });
    if (!has_growing) {
      CHECK_THROWS_AS(boundary_decompose(u, growing), PreconditionError);
      continue;
    }
    const auto d = boundary_decompose(u, growing);
    CHECK(d.reassemble() == u);
    for (Letter a : d.lb) CHECK_FALSE(growing.contains(a));
    for (Letter a : d.rb) CHECK_FALSE(growing.contains(a));
    CHECK(growing.contains(d.lc));
    CHECK(growing.contains(d.rc));
  }
}

TEST_CASE("smallest periods") {
  CHECK(smallest_period(w("0101")) == 2);
  CHECK(smallest_period(w("010")) == 2);
  CHECK(smallest_period(w("0100")) == 3);
  CHECK(smallest_period(w("0")) == 1);
}
