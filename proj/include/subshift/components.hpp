#pragma once

#include <map>
#include <utility>
#include <vector>

#include "subshift/alphabet_graph.hpp"
#include "subshift/boundary.hpp"
#include "subshift/errors.hpp"
#include "subshift/substitution.hpp"
#include "subshift/words.hpp"

namespace subshift {

/// One tame minimal component, displayed in reduced form as the subshift of
/// sigma^power restricted to reduced_alphabet.
struct TameComponent {
  MinimalAlphabet growing_part;  // D, a minimal alphabet inside C_niso
  LetterSet reduced_alphabet;    // E, closure of D under sigma^power letters
  int power = 1;                 // k
};

/// One wild minimal component: the periodic orbit of period_word, stored as
/// the canonical rotation of its primitive root. Provenance lists the
/// isolated letters and sides that generated it.
struct WildComponent {
  Word period_word;
  std::vector<std::pair<Letter, Side>> provenance;
};

struct ComponentCensus {
  std::vector<TameComponent> tame;
  std::vector<WildComponent> wild;
  int tmc = 0;
  int wmc = 0;
  int mc = 0;
};

/// One tame component per minimal alphabet inside C_niso. The reduced
/// alphabet is the least fixed point containing D and closed under letters of
/// sigma^k images; only bounded letters get added, since growing letters of
/// sigma^k(D) stay in D by k-periodicity.
inline std::vector<TameComponent> tame_components(const Substitution& sub,
                                                  const LetterClassification& cls) {
  std::vector<TameComponent> out;
  for (const MinimalAlphabet& m : minimal_alphabets(sub, cls)) {
    if (!is_subset(m.letters, cls.non_isolated)) continue;
    LetterSet E = m.letters;
    for (;;) {
      LetterSet next = E;
      for (Letter a : E) next = unite(next, detail::alph_of_power(sub, a, m.period));
      if (next == E) break;
      E = std::move(next);
    }
    out.push_back(TameComponent{m, std::move(E), m.period});
  }
  return out;
}

/// Wild components from the period words of isolated letters, merged up to
/// rotation of the primitive root. Ordered by canonical word.
inline std::vector<WildComponent> wild_components(const Substitution& sub,
                                                  const LetterClassification& cls) {
  std::vector<WildComponent> out;
  if (cls.left_isolated.empty() && cls.right_isolated.empty()) return out;
  std::map<Word, std::vector<std::pair<Letter, Side>>> merged;
  for (Side side : {Side::left, Side::right}) {
    const LetterSet& iso = side == Side::left ? cls.left_isolated : cls.right_isolated;
    if (iso.empty()) continue;
    BoundarySide bs = analyze_side(sub, cls, side);
    for (Letter c : iso) {
      Word w = period_word(sub, bs, c);
      if (w.empty())
        throw InternalError("isolated letter '" + sub.token(c) + "' has empty period word");
      merged[canonical_rotation(primitive_root(w))].emplace_back(c, side);
    }
  }
  out.reserve(merged.size());
  for (auto& [canon, prov] : merged)
    out.push_back(WildComponent{canon, std::move(prov)});
  return out;
}

inline ComponentCensus census(const Substitution& sub, const LetterClassification& cls) {
  if (cls.growing.empty())
    throw PreconditionError("no growing letters; subshift undefined");
  ComponentCensus c;
  c.tame = tame_components(sub, cls);
  c.wild = wild_components(sub, cls);
  c.tmc = static_cast<int>(c.tame.size());
  c.wmc = static_cast<int>(c.wild.size());
  c.mc = c.tmc + c.wmc;
  if (c.mc < 1) throw InternalError("no minimal components; quasi-minimality violated");
  return c;
}

inline ComponentCensus census(const Substitution& sub) {
  return census(sub, classify(sub));
}

/// The counting inequalities: always TMC <= |C_niso| and
/// WMC <= |C_liso| + |C_riso|; then by the number of bounded letters,
/// MC <= |A| (none), MC <= |A|-1 (one), or MC <= 2|C| <= 2|A|-4 (two or more).
inline bool check_bounds(const LetterClassification& cls, const ComponentCensus& census) {
  const int A = static_cast<int>(cls.bounded.size() + cls.growing.size());
  const int B = static_cast<int>(cls.bounded.size());
  const int C = static_cast<int>(cls.growing.size());
  bool ok = census.tmc <= static_cast<int>(cls.non_isolated.size()) &&
            census.wmc <=
                static_cast<int>(cls.left_isolated.size() + cls.right_isolated.size());
  if (B == 0)
    ok = ok && census.mc <= A;
  else if (B == 1)
    ok = ok && census.mc <= A - 1;
  else
    ok = ok && census.mc <= 2 * C && 2 * C <= 2 * A - 4;
  return ok;
}

inline bool essentially_minimal(const ComponentCensus& census) { return census.mc == 1; }

/// Permutation induced by the substitution on one component family; nodes are
/// indices into the census list of that family.
struct DynamicsGraph {
  enum class Kind { tame, wild };
  Kind kind = Kind::tame;
  std::vector<std::size_t> successor;
};

namespace detail {

inline void check_permutation(const DynamicsGraph& g) {
  std::vector<bool> hit(g.successor.size(), false);
  for (std::size_t t : g.successor) {
    if (t >= g.successor.size() || hit[t])
      throw InternalError("component dynamics is not a permutation");
    hit[t] = true;
  }
}

}  // namespace detail

/// Each tame component maps to the component of its growing part's successor
/// alphabet, which must itself be listed.
inline DynamicsGraph tame_dynamics(const Substitution& sub,
                                   const LetterClassification& cls,
                                   const std::vector<TameComponent>& tame) {
  DynamicsGraph g;
  g.kind = DynamicsGraph::Kind::tame;
  g.successor.reserve(tame.size());
  for (const TameComponent& t : tame) {
    const LetterSet next = successor(sub, cls, t.growing_part.letters);
    std::size_t target = tame.size();
    for (std::size_t j = 0; j < tame.size(); ++j)
      if (tame[j].growing_part.letters == next) {
        target = j;
        break;
      }
    if (target == tame.size())
      throw InternalError("image of tame component " + sub.format(t.growing_part.letters) +
                          " is not a tame component");
    g.successor.push_back(target);
  }
  detail::check_permutation(g);
  return g;
}

/// Wild components map along the boundary edges of their provenance letters.
/// A component reached from several isolated letters must map to a single
/// target; anything else is a bug.
inline DynamicsGraph wild_dynamics(const Substitution& sub,
                                   const LetterClassification& cls,
                                   const std::vector<WildComponent>& wild) {
  DynamicsGraph g;
  g.kind = DynamicsGraph::Kind::wild;
  if (wild.empty()) return g;
  std::map<Side, BoundarySide> sides;
  auto side_data = [&](Side s) -> const BoundarySide& {
    auto it = sides.find(s);
    if (it == sides.end()) it = sides.emplace(s, analyze_side(sub, cls, s)).first;
    return it->second;
  };
  for (std::size_t i = 0; i < wild.size(); ++i) {
    std::size_t target = wild.size();
    for (const auto& [c, side] : wild[i].provenance) {
      const BoundarySide& bs = side_data(side);
      const Letter b = bs.graph.edge.at(c);
      const Word image_word = canonical_rotation(primitive_root(period_word(sub, bs, b)));
      std::size_t j = wild.size();
      for (std::size_t t = 0; t < wild.size(); ++t)
        if (wild[t].period_word == image_word) {
          j = t;
          break;
        }
      if (j == wild.size())
        throw InternalError("image of a wild component is not a wild component");
      if (target == wild.size())
        target = j;
      else if (target != j)
        throw InternalError("inconsistent provenance in wild dynamics");
    }
    g.successor.push_back(target);
  }
  detail::check_permutation(g);
  return g;
}

}  // namespace subshift
