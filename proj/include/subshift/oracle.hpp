#pragma once

// Brute-force language sampling and component cross-validation.  Everything
// in this header recomputes what it needs from the raw substitution rules:
// it must stay independent of the classification and component code so that
// a bug there cannot silently confirm itself.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "subshift/components.hpp"
#include "subshift/errors.hpp"
#include "subshift/substitution.hpp"
#include "subshift/words.hpp"

namespace subshift {

/// Factors of length <= max_len of every sigma^n(a) with n <= depth.
/// Factor sets of this shape are finite stand-ins for the language; they are
/// exact up to the stated depth and length, never beyond it.
class LanguageSample {
 public:
  LanguageSample(std::size_t alphabet_size, int depth, int max_len)
      : depth_(depth),
        max_len_(max_len),
        packed_(alphabet_size <= 16 && max_len <= 15) {}

  int depth() const { return depth_; }
  int max_len() const { return max_len_; }
  bool complete() const { return complete_; }
  std::uint64_t letters_scanned() const { return letters_scanned_; }

  std::size_t size() const { return packed_ ? keys_.size() : words_.size(); }

  bool contains(const Word& u) const {
    if (u.empty() || u.size() > static_cast<std::size_t>(max_len_)) return false;
    if (packed_) return std::binary_search(keys_.begin(), keys_.end(), pack(u));
    return words_.count(u) > 0;
  }

  /// Smallest len with u[i..i+len) missing, scanning len = 1 up to max_len
  /// or the end of u; 0 when every such prefix factor is present.
  std::size_t first_missing_at(const Word& u, std::size_t i) const {
    const std::size_t limit =
        std::min(static_cast<std::size_t>(max_len_), u.size() - i);
    if (packed_) {
      std::uint64_t key = 0;
      for (std::size_t len = 1; len <= limit; ++len) {
        key |= static_cast<std::uint64_t>(u[i + len - 1]) << (4 * (len - 1));
        if (!std::binary_search(keys_.begin(), keys_.end(),
                                key | (static_cast<std::uint64_t>(len) << 60)))
          return len;
      }
      return 0;
    }
    Word factor;
    for (std::size_t len = 1; len <= limit; ++len) {
      factor.push_back(u[i + len - 1]);
      if (words_.count(factor) == 0) return len;
    }
    return 0;
  }

  /// All sampled factors in sorted order; intended for set comparisons.
  std::vector<Word> factors() const {
    std::vector<Word> out;
    if (packed_) {
      out.reserve(keys_.size());
      for (std::uint64_t key : keys_) out.push_back(unpack(key));
      std::sort(out.begin(), out.end());
    } else {
      out.assign(words_.begin(), words_.end());
    }
    return out;
  }

  // Collection interface, used by sample_language below.

  void add_factors_of(const Word& u) {
    const std::size_t cap = static_cast<std::size_t>(max_len_);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const std::size_t limit = std::min(cap, u.size() - i);
      if (packed_) {
        std::uint64_t key = 0;
        for (std::size_t len = 1; len <= limit; ++len) {
          key |= static_cast<std::uint64_t>(u[i + len - 1]) << (4 * (len - 1));
          raw_keys_.push_back(key | (static_cast<std::uint64_t>(len) << 60));
        }
      } else {
        for (std::size_t len = 1; len <= limit; ++len)
          words_.insert(Word(u.begin() + static_cast<std::ptrdiff_t>(i),
                             u.begin() + static_cast<std::ptrdiff_t>(i + len)));
      }
    }
    letters_scanned_ += u.size();
  }

  void seal() {
    if (packed_) {
      std::sort(raw_keys_.begin(), raw_keys_.end());
      raw_keys_.erase(std::unique(raw_keys_.begin(), raw_keys_.end()), raw_keys_.end());
      keys_ = std::move(raw_keys_);
      raw_keys_.clear();
      keys_.shrink_to_fit();
    }
  }

  void mark_incomplete() { complete_ = false; }

 private:
  static std::uint64_t pack(const Word& u) {
    std::uint64_t key = static_cast<std::uint64_t>(u.size()) << 60;
    for (std::size_t i = 0; i < u.size(); ++i)
      key |= static_cast<std::uint64_t>(u[i]) << (4 * i);
    return key;
  }

  static Word unpack(std::uint64_t key) {
    const std::size_t len = static_cast<std::size_t>(key >> 60);
    Word u(len);
    for (std::size_t i = 0; i < len; ++i)
      u[i] = static_cast<Letter>((key >> (4 * i)) & 0xF);
    return u;
  }

  int depth_;
  int max_len_;
  bool packed_;
  bool complete_ = true;
  std::uint64_t letters_scanned_ = 0;
  std::vector<std::uint64_t> raw_keys_;
  std::vector<std::uint64_t> keys_;
  std::set<Word> words_;
};

/// Sampling ran past its letter budget.  The partial sample covers every
/// word fully scanned before the overrun and is marked incomplete.
class BudgetExceeded : public PreconditionError {
 public:
  BudgetExceeded(const std::string& what, LanguageSample partial)
      : PreconditionError(what), partial_(std::move(partial)) {}

  const LanguageSample& partial() const { return partial_; }

 private:
  LanguageSample partial_;
};

namespace oracle_detail {

/// Letters of sigma^n(a), recomputed by iterating over rule alphabets only.
inline LetterSet raw_alph_power(const Substitution& sub, Letter a, int n) {
  LetterSet cur{a};
  for (int t = 0; t < n; ++t) {
    LetterSet next;
    for (Letter b : cur) next = unite(next, alphabet_of(sub.image(b)));
    cur = std::move(next);
  }
  return cur;
}

inline std::uint64_t saturating_mul_add(std::uint64_t acc, std::uint64_t x) {
  constexpr std::uint64_t kCap = std::uint64_t{1} << 62;
  if (acc >= kCap - x) return kCap;
  return acc + x;
}

}  // namespace oracle_detail

/// Letters with eventually constant image growth, detected from the length
/// sequence |sigma^n(a)| alone.  A letter is bounded iff the sequence is
/// constant on some window of |A| consecutive steps, and since lengths are
/// non-decreasing it suffices to compare steps h-|A| and h at the horizon
/// h = 2|A|L.  Saturated values are treated as growing; the threshold only
/// misreads a bounded letter whose stable image exceeds 2^40 letters.
inline LetterSet bounded_letters_by_growth(const Substitution& sub) {
  const std::size_t n = sub.size();
  std::size_t max_image = 1;
  for (std::size_t a = 0; a < n; ++a)
    max_image = std::max(max_image, sub.image(static_cast<Letter>(a)).size());
  const std::size_t horizon = 2 * n * max_image;

  std::vector<std::uint64_t> len(n, 1);
  std::vector<std::uint64_t> earlier(n, 1);
  for (std::size_t t = 1; t <= horizon; ++t) {
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (Letter b : sub.image(static_cast<Letter>(a)))
        next[a] = oracle_detail::saturating_mul_add(next[a], len[static_cast<std::size_t>(b)]);
    len = std::move(next);
    if (t == horizon - n) earlier = len;
  }

  constexpr std::uint64_t kGrowthThreshold = std::uint64_t{1} << 40;
  LetterSet bounded;
  for (std::size_t a = 0; a < n; ++a)
    if (len[a] == earlier[a] && len[a] < kGrowthThreshold)
      bounded.insert(static_cast<Letter>(a));
  return bounded;
}

/// Exact factor sample of the language.  Charges one budget unit per letter
/// materialized; a budget overrun throws BudgetExceeded carrying the partial
/// sample collected so far.
inline LanguageSample sample_language(const Substitution& sub, int depth, int max_len,
                                      std::uint64_t budget = 10'000'000) {
  if (depth < 0) throw PreconditionError("sample depth must be non-negative");
  if (max_len < 1) throw PreconditionError("sample max-len must be positive");

  LanguageSample sample(sub.size(), depth, max_len);
  std::uint64_t spent = 0;
  for (std::size_t a = 0; a < sub.size(); ++a) {
    Word cur{static_cast<Letter>(a)};
    for (int n = 0; n <= depth; ++n) {
      spent += cur.size();
      if (spent > budget) {
        sample.mark_incomplete();
        sample.seal();
        throw BudgetExceeded("language sample budget exceeded", std::move(sample));
      }
      sample.add_factors_of(cur);
      if (n == depth) break;
      Word next = sub.apply(cur);
      if (next == cur) break;
      cur = std::move(next);
    }
  }
  sample.seal();
  return sample;
}

/// Per-step maxima of maximal bounded-run lengths inside sigma^n(a): entry n
/// covers all letters a with 0 <= n <= depth.  Used to calibrate the claim
/// that bounded runs stay uniformly short.
inline std::vector<std::size_t> bounded_factor_growth(const Substitution& sub,
                                                      const LetterClassification& cls,
                                                      int depth,
                                                      std::uint64_t budget = 10'000'000) {
  if (depth < 0) throw PreconditionError("growth depth must be non-negative");
  std::vector<std::size_t> out(static_cast<std::size_t>(depth) + 1, 0);
  std::uint64_t spent = 0;
  for (std::size_t a = 0; a < sub.size(); ++a) {
    Word cur{static_cast<Letter>(a)};
    for (int n = 0; n <= depth; ++n) {
      spent += cur.size();
      if (spent > budget)
        throw PreconditionError("bounded factor growth budget exceeded");
      std::size_t run = 0;
      for (Letter b : cur) {
        if (cls.bounded.contains(b)) {
          ++run;
          out[static_cast<std::size_t>(n)] = std::max(out[static_cast<std::size_t>(n)], run);
        } else {
          run = 0;
        }
      }
      if (n == depth) break;
      cur = sub.apply(cur);
    }
  }
  return out;
}

struct VerifyOptions {
  int power_cap = 6;          // wild words are checked as powers u^m, m <= power_cap
  int scan_depth = 64;        // flank recurrence steps when the sample is too short
  std::uint64_t budget = 10'000'000;
};

struct ComponentVerdict {
  std::string component;
  bool ok = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<ComponentVerdict> verdicts;

  bool all_ok() const {
    for (const auto& v : verdicts)
      if (!v.ok) return false;
    return true;
  }
};

namespace oracle_detail {

inline void note(ComponentVerdict& verdict, const std::string& message) {
  verdict.ok = false;
  if (!verdict.detail.empty()) verdict.detail += "; ";
  verdict.detail += message;
}

inline void remark(ComponentVerdict& verdict, const std::string& message) {
  if (!verdict.detail.empty()) verdict.detail += "; ";
  verdict.detail += message;
}

/// Length of sigma^n(a) with saturation, from the raw rules.
inline std::uint64_t raw_power_length(const Substitution& sub, Letter a, int n) {
  const std::size_t size = sub.size();
  std::vector<std::uint64_t> len(size, 1);
  for (int t = 0; t < n; ++t) {
    std::vector<std::uint64_t> next(size, 0);
    for (std::size_t b = 0; b < size; ++b)
      for (Letter c : sub.image(static_cast<Letter>(b)))
        next[b] = saturating_mul_add(next[b], len[static_cast<std::size_t>(c)]);
    len = std::move(next);
  }
  return len[static_cast<std::size_t>(a)];
}

/// Smallest k >= 1 with successor^k(D) = D under the raw growing-image
/// successor, or 0 if D never returns within the cap.
inline int raw_return_time(const Substitution& sub, const LetterSet& growing,
                           const LetterSet& d, int cap) {
  LetterSet cur = d;
  for (int k = 1; k <= cap; ++k) {
    LetterSet next;
    for (Letter a : cur)
      next = unite(next, intersect(alphabet_of(sub.image(a)), growing));
    cur = std::move(next);
    if (cur == d) return k;
    if (cur.empty()) return 0;
  }
  return 0;
}

/// Maximal bounded prefix of sigma^n(c) and the growing letter after it,
/// via the one-step recurrence on raw images.  Mirrored for suffixes.
struct FlankScan {
  Word word;        // bounded flank of sigma^n(c)
  Letter next = -1; // first (resp. last) growing letter of sigma^n(c)
};

inline FlankScan raw_flank(const Substitution& sub, const LetterSet& growing, Letter c,
                           int n, bool left, std::uint64_t budget) {
  FlankScan scan;
  scan.next = c;
  std::uint64_t spent = 0;
  for (int t = 0; t < n; ++t) {
    const Word image = sub.image(scan.next);
    Word flank = sub.apply(scan.word);
    Word extra;
    Letter pivot = -1;
    if (left) {
      for (Letter b : image) {
        if (growing.contains(b)) {
          pivot = b;
          break;
        }
        extra.push_back(b);
      }
      scan.word = concat(flank, extra);
    } else {
      for (auto it = image.rbegin(); it != image.rend(); ++it) {
        if (growing.contains(*it)) {
          pivot = *it;
          break;
        }
        extra.insert(extra.begin(), *it);
      }
      scan.word = concat(extra, flank);
    }
    if (pivot < 0)
      throw PreconditionError("growing letter with fully bounded image in oracle scan");
    scan.next = pivot;
    spent += scan.word.size();
    if (spent > budget) throw PreconditionError("flank scan budget exceeded");
  }
  return scan;
}

/// Occurrence check for u inside any bounded flank of sigma^n(c), n rising
/// up to scan_depth.  The flank accumulates by the one-step recurrence; a
/// miss within the cap is decisive at desk scale.
inline bool flank_contains(const Substitution& sub, const LetterSet& growing, Letter c,
                           const Word& u, bool left, const VerifyOptions& opts) {
  Word acc;
  Letter pivot = c;
  std::uint64_t spent = 0;
  for (int n = 1; n <= opts.scan_depth; ++n) {
    const Word& image = sub.image(pivot);
    Word extra;
    Letter next = -1;
    if (left) {
      for (Letter b : image) {
        if (growing.contains(b)) {
          next = b;
          break;
        }
        extra.push_back(b);
      }
    } else {
      for (auto it = image.rbegin(); it != image.rend(); ++it) {
        if (growing.contains(*it)) {
          next = *it;
          break;
        }
        extra.insert(extra.begin(), *it);
      }
    }
    if (next < 0)
      throw PreconditionError("growing letter with fully bounded image in oracle scan");
    acc = left ? concat(sub.apply(acc), extra) : concat(extra, sub.apply(acc));
    pivot = next;
    if (std::search(acc.begin(), acc.end(), u.begin(), u.end()) != acc.end()) return true;
    spent += acc.size();
    if (spent > opts.budget) throw PreconditionError("wild occurrence scan budget exceeded");
  }
  return false;
}

/// Primitivity by divisor enumeration, independent of the border-based code.
inline bool raw_is_primitive(const Word& u) {
  const std::size_t n = u.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool matches = true;
    for (std::size_t i = d; i < n && matches; ++i) matches = u[i] == u[i - d];
    if (matches) return false;
  }
  return true;
}

}  // namespace oracle_detail

/// Cross-validates a component census against an independently sampled
/// language.  Structural facts (letter classes, return times, closures) are
/// recomputed from the raw rules; factor containment uses the sample.
inline VerifyReport verify_component_language(const Substitution& sub,
                                              const ComponentCensus& census,
                                              const LanguageSample& sample,
                                              const VerifyOptions& opts = {}) {
  VerifyReport report;
  const LetterSet bounded = bounded_letters_by_growth(sub);
  LetterSet growing;
  for (std::size_t a = 0; a < sub.size(); ++a)
    if (!bounded.contains(static_cast<Letter>(a))) growing.insert(static_cast<Letter>(a));

  std::vector<std::vector<Word>> tame_factor_sets;

  for (const TameComponent& comp : census.tame) {
    ComponentVerdict verdict;
    verdict.component = "tame " + sub.format(comp.reduced_alphabet) + "^" +
                        std::to_string(comp.power);
    const LetterSet& d = comp.growing_part.letters;
    const LetterSet& e = comp.reduced_alphabet;
    const int k = comp.power;

    if (d.empty()) oracle_detail::note(verdict, "empty growing part");
    if (!is_subset(d, growing))
      oracle_detail::note(verdict, "growing part contains bounded letters");
    if (intersect(e, growing) != d)
      oracle_detail::note(verdict, "growing part differs from the growing letters of the alphabet");
    if (k < 1) oracle_detail::note(verdict, "power below 1");

    if (verdict.ok) {
      // Closure: sigma^k maps E into E^+, rebuilt from raw alphabet powers.
      LetterSet closure = d;
      bool grew = true;
      while (grew) {
        grew = false;
        LetterSet next = closure;
        for (Letter a : closure)
          next = unite(next, oracle_detail::raw_alph_power(sub, a, k));
        if (next != closure) {
          closure = std::move(next);
          grew = true;
        }
      }
      if (closure != e)
        oracle_detail::note(verdict, "alphabet is not the sigma^k closure of the growing part");

      const int cap = 1 << std::min<std::size_t>(growing.size(), 16);
      const int ret = oracle_detail::raw_return_time(sub, growing, d, cap);
      if (ret != k)
        oracle_detail::note(verdict, "smallest return time is " + std::to_string(ret) +
                                         ", not " + std::to_string(k));
    }

    // Factor containment: every factor of sigma^{km}(e) must already be in
    // the sampled language whenever km fits inside the sample depth.  The
    // observed factor sets feed the collision remark below, so they are only
    // collected when a second tame component exists to compare against.
    LanguageSample observed(sub.size(), sample.depth(), sample.max_len());
    const bool collect = census.tame.size() >= 2;
    if (verdict.ok) {
      std::uint64_t spent = 0;
      bool sampled_any = false;
      for (Letter a : e) {
        Word cur{a};
        for (int m = 1; m * k <= sample.depth(); ++m) {
          for (int step = 0; step < k; ++step) {
            spent += cur.size();
            if (spent > opts.budget)
              throw PreconditionError("verification budget exceeded");
            cur = sub.apply(cur);
          }
          sampled_any = true;
          for (std::size_t i = 0; i < cur.size(); ++i) {
            const std::size_t miss = sample.first_missing_at(cur, i);
            if (miss > 0) {
              const Word factor(cur.begin() + static_cast<std::ptrdiff_t>(i),
                                cur.begin() + static_cast<std::ptrdiff_t>(i + miss));
              oracle_detail::note(verdict, "factor " + sub.format(factor) +
                                               " of sigma^" + std::to_string(m * k) + "(" +
                                               sub.format(Word{a}) + ") is outside the language");
              break;
            }
          }
          if (!verdict.ok) break;
          if (collect) observed.add_factors_of(cur);
        }
        if (!verdict.ok) break;
      }
      if (!sampled_any)
        oracle_detail::remark(verdict, "power exceeds sample depth; structural checks only");
    }
    observed.seal();
    tame_factor_sets.push_back(verdict.ok && collect ? observed.factors()
                                                     : std::vector<Word>());

    report.verdicts.push_back(std::move(verdict));
  }

  // Distinct tame components sampled at this depth should not collapse to
  // identical factor sets; a collision is flagged for review, not failed.
  for (std::size_t i = 0; i < tame_factor_sets.size(); ++i)
    for (std::size_t j = i + 1; j < tame_factor_sets.size(); ++j)
      if (!tame_factor_sets[i].empty() && tame_factor_sets[i] == tame_factor_sets[j]) {
        oracle_detail::remark(report.verdicts[i],
                              "sampled factors coincide with " + report.verdicts[j].component);
        oracle_detail::remark(report.verdicts[j],
                              "sampled factors coincide with " + report.verdicts[i].component);
      }

  for (const WildComponent& comp : census.wild) {
    ComponentVerdict verdict;
    verdict.component = "wild " + sub.format(comp.period_word);
    const Word& u = comp.period_word;

    if (u.empty()) {
      oracle_detail::note(verdict, "empty period word");
      report.verdicts.push_back(std::move(verdict));
      continue;
    }
    for (Letter a : u)
      if (!bounded.contains(a)) {
        oracle_detail::note(verdict, "period word contains a growing letter");
        break;
      }
    if (!oracle_detail::raw_is_primitive(u))
      oracle_detail::note(verdict, "period word is not primitive");
    Word least = u;
    for (std::size_t i = 1; i < u.size(); ++i) {
      Word rot(u.begin() + static_cast<std::ptrdiff_t>(i), u.end());
      rot.insert(rot.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(i));
      if (rot < least) least = rot;
    }
    if (least != u)
      oracle_detail::note(verdict, "period word is not in canonical rotation");
    if (comp.provenance.empty())
      oracle_detail::note(verdict, "no isolated letter produces this word");

    if (verdict.ok) {
      for (int m = 1; m <= opts.power_cap; ++m) {
        Word power = word_power(u, static_cast<std::size_t>(m));
        bool found = sample.contains(power);
        if (!found) {
          for (const auto& [c, side] : comp.provenance) {
            if (!growing.contains(c)) continue;
            if (oracle_detail::flank_contains(sub, growing, c, power, side == Side::left, opts)) {
              found = true;
              break;
            }
          }
        }
        if (!found) {
          oracle_detail::note(verdict, "power " + std::to_string(m) +
                                           " of the period word was not observed");
          break;
        }
      }
    }

    report.verdicts.push_back(std::move(verdict));
  }

  return report;
}

}  // namespace subshift
