#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "subshift/errors.hpp"
#include "subshift/substitution.hpp"
#include "subshift/words.hpp"

namespace subshift {

/// Eventually periodic successor orbit of a growing subalphabet. The start
/// set is preperiod[0] when the preperiod is non-empty, else cycle[0].
struct AlphabetOrbit {
  LetterSet start;
  std::vector<LetterSet> preperiod;
  std::vector<LetterSet> cycle;

  const LetterSet& at(std::size_t t) const {
    if (t < preperiod.size()) return preperiod[t];
    return cycle[(t - preperiod.size()) % cycle.size()];
  }
};

/// A k-periodic growing subalphabet with no proper periodic subalphabet,
/// plus the multiplier witnesses certifying minimality per member letter.
struct MinimalAlphabet {
  LetterSet letters;
  int period = 1;
  std::map<Letter, int> witness;  // a -> l_a with {a} ->_{k*l_a} letters
};

/// Union of the growing letters of sigma(a) over a in D.
inline LetterSet successor(const Substitution& sub, const LetterClassification& cls,
                           const LetterSet& D) {
  if (D.empty()) throw PreconditionError("successor of empty alphabet");
  LetterSet out;
  for (Letter a : D) {
    if (!cls.growing.contains(a))
      throw PreconditionError("successor requires growing letters only; got '" +
                              sub.token(a) + "'");
    out = unite(out, intersect(alphabet_of(sub.image(a)), cls.growing));
  }
  return out;
}

inline AlphabetOrbit orbit(const Substitution& sub, const LetterClassification& cls,
                           const LetterSet& D) {
  AlphabetOrbit out;
  out.start = D;
  std::vector<LetterSet> seq{D};
  std::map<LetterSet, std::size_t> seen{{D, 0}};
  for (;;) {
    LetterSet next = successor(sub, cls, seq.back());
    auto it = seen.find(next);
    if (it != seen.end()) {
      const std::size_t r = it->second;
      out.preperiod.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(r));
      out.cycle.assign(seq.begin() + static_cast<std::ptrdiff_t>(r), seq.end());
      return out;
    }
    seen.emplace(next, seq.size());
    seq.push_back(std::move(next));
  }
}

namespace detail {

/// Minimality per the multiplier lemma: D (k-periodic) is minimal iff every
/// member's singleton orbit passes through D at some positive multiple of k.
/// One lcm of the member's cycle length with k, past the preperiod, is an
/// exhaustive search window.
inline bool lemma_minimal(const Substitution& sub, const LetterClassification& cls,
                          const LetterSet& D, int k,
                          std::map<Letter, AlphabetOrbit>& singleton_orbits,
                          std::map<Letter, int>* witness) {
  for (Letter a : D) {
    auto it = singleton_orbits.find(a);
    if (it == singleton_orbits.end())
      it = singleton_orbits.emplace(a, orbit(sub, cls, LetterSet{a})).first;
    const AlphabetOrbit& orb = it->second;
    const std::size_t pre = orb.preperiod.size();
    const std::size_t lambda = orb.cycle.size();
    const std::size_t bound =
        pre + std::lcm(lambda, static_cast<std::size_t>(k)) + static_cast<std::size_t>(k);
    bool found = false;
    for (std::size_t t = static_cast<std::size_t>(k); t <= bound;
         t += static_cast<std::size_t>(k)) {
      if (orb.at(t) == D) {
        if (witness) (*witness)[a] = static_cast<int>(t / static_cast<std::size_t>(k));
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

/// All minimal alphabets with their periods. Candidates are exactly the
/// periodic alphabets met in singleton orbits; each candidate's period is the
/// length of the cycle it lies on.
inline std::vector<MinimalAlphabet> minimal_alphabets(const Substitution& sub,
                                                      const LetterClassification& cls) {
  if (cls.growing.empty())
    throw PreconditionError("no growing letters; subshift undefined");
  std::map<Letter, AlphabetOrbit> singleton_orbits;
  std::map<LetterSet, int> candidates;
  for (Letter a : cls.growing) {
    auto [it, _] = singleton_orbits.emplace(a, orbit(sub, cls, LetterSet{a}));
    const AlphabetOrbit& orb = it->second;
    for (const LetterSet& S : orb.cycle)
      candidates.emplace(S, static_cast<int>(orb.cycle.size()));
  }
  std::vector<MinimalAlphabet> out;
  for (const auto& [S, k] : candidates) {
    MinimalAlphabet m;
    m.letters = S;
    m.period = k;
    if (detail::lemma_minimal(sub, cls, S, k, singleton_orbits, &m.witness))
      out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const MinimalAlphabet& x, const MinimalAlphabet& y) {
    return std::make_pair(x.letters.min(), x.letters) <
           std::make_pair(y.letters.min(), y.letters);
  });
  return out;
}

/// True iff the growing part D = E & C is a minimal alphabet of period
/// exactly k; by the equivalence this says sigma^k restricted to E is
/// l-primitive. The restriction must be defined.
inline bool is_l_primitive(const Substitution& sub, const LetterClassification& cls,
                           const LetterSet& E, int k) {
  if (k < 1) throw PreconditionError("power must be >= 1");
  for (Letter a : E) {
    LetterSet reach = detail::alph_of_power(sub, a, k);
    if (!is_subset(reach, E))
      throw PreconditionError("restriction not closed over " + sub.format(E));
  }
  LetterSet D = intersect(E, cls.growing);
  if (D.empty()) return false;
  // Smallest return time of D; bounded by the number of growing subsets.
  std::uint64_t guard = 1;
  for (std::size_t i = 0; i < cls.growing.size() && guard < (UINT64_C(1) << 32); ++i)
    guard *= 2;
  LetterSet S = D;
  int period = 0;
  for (std::uint64_t t = 1; t <= guard; ++t) {
    S = successor(sub, cls, S);
    if (S == D) {
      period = static_cast<int>(t);
      break;
    }
  }
  if (period != k) return false;
  std::map<Letter, AlphabetOrbit> cache;
  return detail::lemma_minimal(sub, cls, D, k, cache, nullptr);
}

}  // namespace subshift
