#pragma once

#include <map>
#include <string>
#include <vector>

#include "subshift/errors.hpp"
#include "subshift/functional_graph.hpp"
#include "subshift/substitution.hpp"
#include "subshift/words.hpp"

namespace subshift {

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

namespace detail {

/// Bounded flank of sigma(c): the prefix (left) or suffix (right) of the
/// image consisting of bounded letters.
inline Word flank_word(const Substitution& sub, const LetterClassification& cls,
                       Letter c, Side side) {
  const Word& img = sub.image(c);
  const std::size_t len = flank_length(sub, cls, c, side == Side::left);
  if (side == Side::left) return Word(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(len));
  return Word(img.end() - static_cast<std::ptrdiff_t>(len), img.end());
}

inline Letter step_edge(const Substitution& sub, const LetterClassification& cls,
                        Letter c, Side side) {
  return boundary_edge(sub, cls, c, side == Side::left);
}

}  // namespace detail

/// Out-degree-one graph on growing letters: on the left side c points to the
/// first growing letter of sigma(c), on the right to the last.
struct BoundaryGraph {
  Side side = Side::left;
  std::map<Letter, Letter> edge;
  std::vector<std::vector<Letter>> cycles;
  std::map<Letter, int> entry_steps;  // r_c; 0 iff c lies on a cycle
  std::map<Letter, int> cycle_of;     // cycle eventually reached

  bool on_cycle(Letter c) const { return entry_steps.at(c) == 0; }

  Letter walk(Letter c, int steps) const {
    for (int i = 0; i < steps; ++i) c = edge.at(c);
    return c;
  }
};

inline BoundaryGraph build_boundary_graph(const Substitution& sub,
                                          const LetterClassification& cls, Side side) {
  if (cls.growing.empty()) throw PreconditionError("no growing letters");
  BoundaryGraph g;
  g.side = side;
  for (Letter c : cls.growing) g.edge[c] = detail::step_edge(sub, cls, c, side);
  FunctionalCycles fc =
      functional_cycles(cls.growing.letters(), [&](Letter c) { return g.edge.at(c); });
  g.cycles = std::move(fc.cycles);
  g.entry_steps = std::move(fc.entry_steps);
  g.cycle_of = std::move(fc.cycle_of);
  return g;
}

/// Base words of one cycle together with the joint exponents q and p_C:
/// the first pair with sigma^{p(q+p_C)} and sigma^{pq} agreeing on every
/// base word of the cycle simultaneously.
struct CyclePeriodData {
  std::vector<Letter> cycle;    // c_0 .. c_{p-1} in edge order
  std::vector<Word> base_words; // L(c_i) on the left side, R(c_i) on the right
  int preperiod_exponent = 0;   // q
  int period_exponent = 1;      // p_C
};

inline CyclePeriodData cycle_base_words(const Substitution& sub,
                                        const LetterClassification& cls,
                                        const BoundaryGraph& g,
                                        const std::vector<Letter>& cycle) {
  const std::size_t p = cycle.size();
  if (p == 0) throw PreconditionError("empty cycle");
  for (std::size_t t = 0; t < p; ++t)
    if (!g.on_cycle(cycle[t]) || g.edge.at(cycle[t]) != cycle[(t + 1) % p])
      throw PreconditionError("not a cycle of this graph");
  CyclePeriodData out;
  out.cycle = cycle;
  out.base_words.resize(p);
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<Word> parts(p);
    for (std::size_t j = 0; j < p; ++j) {
      if (g.side == Side::left) {
        Word f = detail::flank_word(sub, cls, cycle[(i + j) % p], Side::left);
        parts[j] = sub.apply_power(f, static_cast<int>(p - 1 - j));
      } else {
        Word f = detail::flank_word(sub, cls, cycle[(i + p - 1 - j) % p], Side::right);
        parts[j] = sub.apply_power(f, static_cast<int>(j));
      }
    }
    out.base_words[i] = concat_family(parts);
  }
  // Joint orbit of the base-word tuple under sigma^p. Bounded letters only,
  // so the tuple space is finite and the loop terminates.
  std::vector<std::vector<Word>> seen{out.base_words};
  for (;;) {
    std::vector<Word> next(p);
    for (std::size_t i = 0; i < p; ++i)
      next[i] = sub.apply_power(seen.back()[i], static_cast<int>(p));
    auto it = std::find(seen.begin(), seen.end(), next);
    if (it != seen.end()) {
      out.preperiod_exponent = static_cast<int>(it - seen.begin());
      out.period_exponent = static_cast<int>(seen.size() - (it - seen.begin()));
      return out;
    }
    if (seen.size() > 100000)
      throw InternalError("base word orbit failed to close");
    seen.push_back(std::move(next));
  }
}

/// One side's full boundary picture: graph plus per-cycle period data.
struct BoundarySide {
  Side side = Side::left;
  BoundaryGraph graph;
  std::vector<CyclePeriodData> data;  // parallel to graph.cycles

  /// Cycle data and position for a letter on a cycle.
  const CyclePeriodData& at(Letter c, std::size_t* index) const {
    if (!graph.on_cycle(c))
      throw PreconditionError(std::string("'") + std::to_string(c) + "' is not " +
                              side_name(side) + "-periodic");
    const CyclePeriodData& cd = data[static_cast<std::size_t>(graph.cycle_of.at(c))];
    for (std::size_t i = 0; i < cd.cycle.size(); ++i)
      if (cd.cycle[i] == c) {
        *index = i;
        return cd;
      }
    throw InternalError("cycle membership inconsistent");
  }
};

inline BoundarySide analyze_side(const Substitution& sub, const LetterClassification& cls,
                                 Side side) {
  BoundarySide out;
  out.side = side;
  out.graph = build_boundary_graph(sub, cls, side);
  out.data.reserve(out.graph.cycles.size());
  for (const auto& cycle : out.graph.cycles)
    out.data.push_back(cycle_base_words(sub, cls, out.graph, cycle));
  return out;
}

/// LP(c) or RP(c): the periodic part accumulated on the side of a periodic
/// letter. Empty exactly when the letter is not isolated on that side.
inline Word period_word(const Substitution& sub, const BoundarySide& bs, Letter c) {
  std::size_t i = 0;
  const CyclePeriodData& cd = bs.at(c, &i);
  const int p = static_cast<int>(cd.cycle.size());
  const int q = cd.preperiod_exponent;
  const int pc = cd.period_exponent;
  std::vector<Word> parts;
  parts.reserve(static_cast<std::size_t>(pc));
  for (int j = 0; j < pc; ++j) {
    const int e = bs.side == Side::left ? p * (q + pc - 1 - j) : p * (q + j);
    parts.push_back(sub.apply_power(cd.base_words[i], e));
  }
  return concat_family(parts);
}

/// LQ(c) or RQ(c): the transient part preceding (left) or following (right)
/// the pumped periods. Empty when q = 0.
inline Word preperiod_word(const Substitution& sub, const BoundarySide& bs, Letter c) {
  std::size_t i = 0;
  const CyclePeriodData& cd = bs.at(c, &i);
  const int p = static_cast<int>(cd.cycle.size());
  const int q = cd.preperiod_exponent;
  std::vector<Word> parts;
  parts.reserve(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) {
    const int e = bs.side == Side::left ? p * (q - 1 - j) : p * j;
    parts.push_back(sub.apply_power(cd.base_words[i], e));
  }
  return concat_family(parts);
}

inline Word lp_word(const Substitution& sub, const LetterClassification& cls, Letter c) {
  return period_word(sub, analyze_side(sub, cls, Side::left), c);
}
inline Word rp_word(const Substitution& sub, const LetterClassification& cls, Letter c) {
  return period_word(sub, analyze_side(sub, cls, Side::right), c);
}
inline Word lq_word(const Substitution& sub, const LetterClassification& cls, Letter c) {
  return preperiod_word(sub, analyze_side(sub, cls, Side::left), c);
}
inline Word rq_word(const Substitution& sub, const LetterClassification& cls, Letter c) {
  return preperiod_word(sub, analyze_side(sub, cls, Side::right), c);
}

/// LB(sigma^n(c)) by the one-step recurrence
/// LB(sigma(u)) = sigma(LB(u)) LB(sigma(LC(u))), without materializing
/// sigma^n(c). Cost grows with the flank length, not the image length.
inline Word bounded_prefix_of_power(const Substitution& sub,
                                    const LetterClassification& cls, Letter c, int n) {
  if (!cls.growing.contains(c)) throw PreconditionError("growing letter required");
  Word w;
  Letter x = c;
  for (int m = 0; m < n; ++m) {
    w = concat(sub.apply(w), detail::flank_word(sub, cls, x, Side::left));
    x = detail::step_edge(sub, cls, x, Side::left);
  }
  return w;
}

/// RB(sigma^n(c)) by the mirror recurrence
/// RB(sigma(u)) = RB(sigma(RC(u))) sigma(RB(u)).
inline Word bounded_suffix_of_power(const Substitution& sub,
                                    const LetterClassification& cls, Letter c, int n) {
  if (!cls.growing.contains(c)) throw PreconditionError("growing letter required");
  Word w;
  Letter x = c;
  for (int m = 0; m < n; ++m) {
    w = concat(detail::flank_word(sub, cls, x, Side::right), sub.apply(w));
    x = detail::step_edge(sub, cls, x, Side::right);
  }
  return w;
}

/// LB(sigma^k(c)) = prefix LP(base)^exponent tail, with tail = LQ(base).
struct LbDecomposition {
  Word prefix;      // LE_k(c)
  Letter base = -1; // c_i on the cycle reached from c
  int exponent = 0; // l
  Word tail;        // LQ(c_i)
};

/// RB(sigma^k(c)) = head RP(base)^exponent suffix, with head = RQ(base).
struct RbDecomposition {
  Word head;        // RQ(c_i)
  int exponent = 0; // l
  Letter base = -1; // c_i
  Word suffix;      // RE_k(c)
};

namespace detail {

struct SplitK {
  int r, p, q, pc;   // entry steps, cycle length, joint exponents
  int i, l, lres;    // k = r + i + p*(q + l*pc + lres), 0 <= i < p, 0 <= lres < pc
  Letter base;       // c_i, indexed from the entry point
  std::size_t base_index;
};

inline SplitK split_power(const BoundarySide& bs, Letter c, int k) {
  SplitK s{};
  s.r = bs.graph.entry_steps.at(c);
  std::size_t entry_index = 0;
  const Letter c0 = bs.graph.walk(c, s.r);
  const CyclePeriodData& cd = bs.at(c0, &entry_index);
  s.p = static_cast<int>(cd.cycle.size());
  s.q = cd.preperiod_exponent;
  s.pc = cd.period_exponent;
  const int threshold = s.r + s.p * s.q;
  if (k < threshold)
    throw PreconditionError("power " + std::to_string(k) +
                            " below decomposition threshold " + std::to_string(threshold));
  s.i = (k - s.r) % s.p;
  const int m = (k - s.r - s.i) / s.p - s.q;
  s.l = m / s.pc;
  s.lres = m % s.pc;
  s.base_index = (entry_index + static_cast<std::size_t>(s.i)) % cd.cycle.size();
  s.base = cd.cycle[s.base_index];
  return s;
}

}  // namespace detail

inline LbDecomposition decompose_lb(const Substitution& sub,
                                    const LetterClassification& cls,
                                    const BoundarySide& bs, Letter c, int k) {
  if (bs.side != Side::left) throw PreconditionError("left-side data required");
  const detail::SplitK s = detail::split_power(bs, c, k);
  LbDecomposition out;
  out.base = s.base;
  out.exponent = s.l;
  out.tail = preperiod_word(sub, bs, s.base);
  const int elementary = s.r + s.i + s.p * s.lres;
  std::vector<Word> parts;
  parts.reserve(static_cast<std::size_t>(elementary));
  Letter x = c;
  for (int j = 0; j < elementary; ++j) {
    Word f = detail::flank_word(sub, cls, x, Side::left);
    parts.push_back(sub.apply_power(f, k - 1 - j));
    x = bs.graph.edge.at(x);
  }
  out.prefix = concat_family(parts);
  return out;
}

inline RbDecomposition decompose_rb(const Substitution& sub,
                                    const LetterClassification& cls,
                                    const BoundarySide& bs, Letter c, int k) {
  if (bs.side != Side::right) throw PreconditionError("right-side data required");
  const detail::SplitK s = detail::split_power(bs, c, k);
  RbDecomposition out;
  out.base = s.base;
  out.exponent = s.l;
  out.head = preperiod_word(sub, bs, s.base);
  // Elementary terms j = p(q + l*pc) .. k-1; the inner letter is the
  // (k-1-j)-step right walk from c.
  std::vector<Word> parts;
  const int start = s.p * (s.q + s.l * s.pc);
  parts.reserve(static_cast<std::size_t>(k - start));
  for (int j = start; j < k; ++j) {
    const Letter x = bs.graph.walk(c, k - 1 - j);
    Word f = detail::flank_word(sub, cls, x, Side::right);
    parts.push_back(sub.apply_power(f, j));
  }
  out.suffix = concat_family(parts);
  return out;
}

inline LbDecomposition decompose_lb(const Substitution& sub,
                                    const LetterClassification& cls, Letter c, int k) {
  return decompose_lb(sub, cls, analyze_side(sub, cls, Side::left), c, k);
}

inline RbDecomposition decompose_rb(const Substitution& sub,
                                    const LetterClassification& cls, Letter c, int k) {
  return decompose_rb(sub, cls, analyze_side(sub, cls, Side::right), c, k);
}

/// Decomposition threshold r_c + p*q for one letter and side; powers below
/// it are rejected by decompose_lb/decompose_rb.
inline int decomposition_threshold(const BoundarySide& bs, Letter c) {
  const int r = bs.graph.entry_steps.at(c);
  std::size_t idx = 0;
  const CyclePeriodData& cd = bs.at(bs.graph.walk(c, r), &idx);
  return r + static_cast<int>(cd.cycle.size()) * cd.preperiod_exponent;
}

/// A growing-bounded-growing factor (a, u, b); u may be empty.
struct OneBlock {
  Letter left = -1;
  Word middle;
  Letter right = -1;

  bool operator==(const OneBlock&) const = default;
};

inline std::vector<OneBlock> one_blocks(const Word& u, const LetterClassification& cls) {
  std::vector<OneBlock> out;
  std::ptrdiff_t prev = -1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!cls.growing.contains(u[i])) continue;
    if (prev >= 0) {
      OneBlock b;
      b.left = u[static_cast<std::size_t>(prev)];
      b.middle = Word(u.begin() + prev + 1, u.begin() + static_cast<std::ptrdiff_t>(i));
      b.right = u[i];
      out.push_back(std::move(b));
    }
    prev = static_cast<std::ptrdiff_t>(i);
  }
  return out;
}

/// 1-blocks of the first images sigma(c), deduplicated in first-seen order.
inline std::vector<OneBlock> origins(const Substitution& sub,
                                     const LetterClassification& cls) {
  std::vector<OneBlock> out;
  for (std::size_t c = 0; c < sub.size(); ++c) {
    for (OneBlock& b : one_blocks(sub.image(static_cast<Letter>(c)), cls)) {
      if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(std::move(b));
    }
  }
  return out;
}

namespace detail {

inline void check_block(const LetterClassification& cls, const OneBlock& b) {
  if (!cls.growing.contains(b.left) || !cls.growing.contains(b.right))
    throw PreconditionError("1-block endpoints must be growing");
  for (Letter x : b.middle)
    if (cls.growing.contains(x))
      throw PreconditionError("1-block middle must be bounded");
}

}  // namespace detail

/// One substitution step on a 1-block:
/// (RC(sigma(a)), RB(sigma(a)) sigma(u) LB(sigma(b)), LC(sigma(b))).
inline OneBlock descendant(const Substitution& sub, const LetterClassification& cls,
                           const OneBlock& block) {
  detail::check_block(cls, block);
  OneBlock out;
  out.left = detail::step_edge(sub, cls, block.left, Side::right);
  out.right = detail::step_edge(sub, cls, block.right, Side::left);
  out.middle = concat_family({detail::flank_word(sub, cls, block.left, Side::right),
                              sub.apply(block.middle),
                              detail::flank_word(sub, cls, block.right, Side::left)});
  return out;
}

/// l-fold evolution in closed form:
/// (RC(sigma^l(a)), RB(sigma^l(a)) sigma^l(u) LB(sigma^l(b)), LC(sigma^l(b))).
/// Matches iterating descendant l times.
inline OneBlock evolution_closed_form(const Substitution& sub,
                                      const LetterClassification& cls,
                                      const OneBlock& origin, int l) {
  detail::check_block(cls, origin);
  if (l < 0) throw PreconditionError("negative evolution step");
  if (l == 0) return origin;
  OneBlock out;
  Letter a = origin.left, b = origin.right;
  for (int i = 0; i < l; ++i) {
    a = detail::step_edge(sub, cls, a, Side::right);
    b = detail::step_edge(sub, cls, b, Side::left);
  }
  out.left = a;
  out.right = b;
  out.middle = concat_family({bounded_suffix_of_power(sub, cls, origin.left, l),
                              sub.apply_power(origin.middle, l),
                              bounded_prefix_of_power(sub, cls, origin.right, l)});
  return out;
}

}  // namespace subshift
