#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "subshift/errors.hpp"

namespace subshift {

/// Letters are interned as dense indices; the index order is the canonical
/// total order used by every deterministic output.
using Letter = std::int32_t;

using Word = std::vector<Letter>;

/// Sorted duplicate-free letter set. Iteration order equals the letter order,
/// so code iterating a LetterSet is deterministic for free.
class LetterSet {
 public:
  LetterSet() = default;
  LetterSet(std::initializer_list<Letter> xs) : xs_(xs) { normalize(); }
  explicit LetterSet(std::vector<Letter> xs) : xs_(std::move(xs)) { normalize(); }

  void insert(Letter a) {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), a);
    if (it == xs_.end() || *it != a) xs_.insert(it, a);
  }
  void erase(Letter a) {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), a);
    if (it != xs_.end() && *it == a) xs_.erase(it);
  }
  bool contains(Letter a) const {
    return std::binary_search(xs_.begin(), xs_.end(), a);
  }

  bool empty() const { return xs_.empty(); }
  std::size_t size() const { return xs_.size(); }
  auto begin() const { return xs_.begin(); }
  auto end() const { return xs_.end(); }
  const std::vector<Letter>& letters() const { return xs_; }
  Letter min() const {
    if (xs_.empty()) throw PreconditionError("min of empty letter set");
    return xs_.front();
  }

  bool operator==(const LetterSet&) const = default;
  auto operator<=>(const LetterSet&) const = default;

 private:
  void normalize() {
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
  }
  std::vector<Letter> xs_;
};

inline LetterSet unite(const LetterSet& a, const LetterSet& b) {
  std::vector<Letter> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LetterSet(std::move(out));
}

inline LetterSet intersect(const LetterSet& a, const LetterSet& b) {
  std::vector<Letter> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LetterSet(std::move(out));
}

inline LetterSet difference(const LetterSet& a, const LetterSet& b) {
  std::vector<Letter> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LetterSet(std::move(out));
}

inline bool is_subset(const LetterSet& a, const LetterSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline LetterSet alphabet_of(const Word& u) {
  LetterSet s;
  for (Letter a : u) s.insert(a);
  return s;
}

template <typename... Rest>
inline Word concat(const Word& u, const Rest&... rest) {
  Word out = u;
  (out.insert(out.end(), rest.begin(), rest.end()), ...);
  return out;
}

/// Left-to-right concatenation of a family; the empty family gives the empty
/// word, matching the convention for unions over empty index ranges.
inline Word concat_family(const std::vector<Word>& parts) {
  std::size_t total = 0;
  for (const Word& p : parts) total += p.size();
  Word out;
  out.reserve(total);
  for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// Smallest period of u, from the border (failure function) structure:
/// the smallest p such that u[i] = u[i+p] wherever both sides exist.
inline std::size_t smallest_period(const Word& u) {
  if (u.empty()) throw PreconditionError("smallest period of empty word");
  const std::size_t n = u.size();
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t b = border[i - 1];
    while (b > 0 && u[i] != u[b]) b = border[b - 1];
    if (u[i] == u[b]) ++b;
    border[i] = b;
  }
  return n - border[n - 1];
}

/// Shortest v with u = v^k. If the smallest period does not divide |u|,
/// u itself is primitive.
inline Word primitive_root(const Word& u) {
  if (u.empty()) throw PreconditionError("empty word has no primitive root");
  const std::size_t p = smallest_period(u);
  if (u.size() % p != 0) return u;
  return Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(p));
}

inline bool is_primitive(const Word& u) { return primitive_root(u).size() == u.size(); }

inline Word word_power(const Word& u, std::size_t k) {
  Word out;
  out.reserve(u.size() * k);
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), u.begin(), u.end());
  return out;
}

/// True iff u = ww' and v = w'w for some split. Equivalent to |u| = |v| and
/// v occurring inside uu.
inline bool cyclic_equal(const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  if (u.empty()) return true;
  Word uu = concat(u, u);
  return std::search(uu.begin(), uu.end(), v.begin(), v.end()) != uu.end();
}

/// Lexicographically least rotation under the letter order. Plain scan over
/// all start positions; period words here are short.
inline Word canonical_rotation(const Word& u) {
  if (u.empty()) throw PreconditionError("empty word has no canonical rotation");
  const std::size_t n = u.size();
  Word uu = concat(u, u);
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::lexicographical_compare(uu.begin() + static_cast<std::ptrdiff_t>(i),
                                     uu.begin() + static_cast<std::ptrdiff_t>(i + n),
                                     uu.begin() + static_cast<std::ptrdiff_t>(best),
                                     uu.begin() + static_cast<std::ptrdiff_t>(best + n)))
      best = i;
  }
  return Word(uu.begin() + static_cast<std::ptrdiff_t>(best),
              uu.begin() + static_cast<std::ptrdiff_t>(best + n));
}

/// Split of a word around its first and last growing letters. lb and rb hold
/// the bounded flanks, middle the letters strictly between the two growing
/// endpoints. When the word has exactly one growing occurrence, lc and rc
/// name the same occurrence and middle is empty; reassemble() respects that.
struct BoundaryDecomposition {
  Word lb;
  Letter lc = -1;
  Word middle;
  Letter rc = -1;
  Word rb;
  bool single_growing = false;

  Word reassemble() const {
    Word out = lb;
    out.push_back(lc);
    if (!single_growing) {
      out.insert(out.end(), middle.begin(), middle.end());
      out.push_back(rc);
    }
    out.insert(out.end(), rb.begin(), rb.end());
    return out;
  }
};

inline BoundaryDecomposition boundary_decompose(const Word& u, const LetterSet& growing) {
  std::ptrdiff_t first = -1, last = -1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (growing.contains(u[i])) {
      if (first < 0) first = static_cast<std::ptrdiff_t>(i);
      last = static_cast<std::ptrdiff_t>(i);
    }
  }
  if (first < 0) throw PreconditionError("fully bounded word");
  BoundaryDecomposition d;
  d.lb = Word(u.begin(), u.begin() + first);
  d.lc = u[static_cast<std::size_t>(first)];
  d.rc = u[static_cast<std::size_t>(last)];
  d.rb = Word(u.begin() + last + 1, u.end());
  d.single_growing = (first == last);
  if (!d.single_growing) d.middle = Word(u.begin() + first + 1, u.begin() + last);
  return d;
}

}  // namespace subshift
