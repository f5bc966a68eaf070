#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subshift/errors.hpp"
#include "subshift/functional_graph.hpp"
#include "subshift/words.hpp"

namespace subshift {

/// A non-erasing morphism sigma: A -> A+ with interned letters. Immutable
/// after construction; the power memo is behind a mutex so concurrent readers
/// are safe, and copies share it.
class Substitution {
 public:
  /// Plain-text rules: one `lhs -> image` per line or semicolon-separated.
  /// When every letter is a single character an image may be written without
  /// spaces ("141"); otherwise images must be space-separated token lists.
  static Substitution parse(const std::string& source) {
    std::vector<std::pair<std::string, std::string>> raw;
    std::string entry;
    auto flush = [&]() {
      std::string trimmed = trim(entry);
      entry.clear();
      if (trimmed.empty()) return;
      const auto arrow = trimmed.find("->");
      if (arrow == std::string::npos)
        throw ParseError("rule without '->': \"" + trimmed + "\"");
      std::string lhs = trim(trimmed.substr(0, arrow));
      std::string rhs = trim(trimmed.substr(arrow + 2));
      if (lhs.empty()) throw ParseError("rule with empty left-hand side");
      if (lhs.find_first_of(" \t") != std::string::npos)
        throw ParseError("left-hand side must be a single token: \"" + lhs + "\"");
      raw.emplace_back(std::move(lhs), std::move(rhs));
    };
    for (char ch : source) {
      if (ch == '\n' || ch == ';') {
        flush();
      } else {
        entry.push_back(ch);
      }
    }
    flush();
    return from_raw_rules(raw);
  }

  /// Programmatic construction; images given as token sequences.
  static Substitution from_rules(
      const std::vector<std::pair<std::string, std::vector<std::string>>>& rules) {
    Substitution sub;
    for (const auto& [lhs, _] : rules) sub.intern(lhs);
    sub.rules_.resize(sub.tokens_.size());
    std::vector<bool> seen(sub.tokens_.size(), false);
    for (const auto& [lhs, image] : rules) {
      const Letter a = sub.index_.at(lhs);
      if (seen[static_cast<std::size_t>(a)])
        throw ParseError("duplicate rule for letter '" + lhs + "'");
      seen[static_cast<std::size_t>(a)] = true;
      if (image.empty())
        throw ParseError("erasing morphism unsupported (letter '" + lhs + "')");
      Word w;
      for (const std::string& tok : image) {
        auto it = sub.index_.find(tok);
        if (it == sub.index_.end())
          throw ParseError("image letter without a rule: '" + tok + "'");
        w.push_back(it->second);
      }
      sub.rules_[static_cast<std::size_t>(a)] = std::move(w);
    }
    return sub;
  }

  /// Shared raw-rule path: splits each image per the token conventions.
  static Substitution from_raw_rules(
      const std::vector<std::pair<std::string, std::string>>& raw) {
    if (raw.empty()) throw ParseError("no rules");
    bool single_char = true;
    for (const auto& [lhs, _] : raw) single_char = single_char && lhs.size() == 1;
    std::vector<std::pair<std::string, std::vector<std::string>>> rules;
    rules.reserve(raw.size());
    for (const auto& [lhs, rhs] : raw)
      rules.emplace_back(lhs, split_image(rhs, single_char, lhs));
    return from_rules(rules);
  }

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  const std::string& token(Letter a) const {
    check_letter(a);
    return tokens_[static_cast<std::size_t>(a)];
  }

  Letter letter(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) throw PreconditionError("unknown letter '" + token + "'");
    return it->second;
  }

  bool has_token(const std::string& token) const { return index_.count(token) != 0; }

  LetterSet alphabet() const {
    std::vector<Letter> all(tokens_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Letter>(i);
    return LetterSet(std::move(all));
  }

  const Word& image(Letter a) const {
    check_letter(a);
    return rules_[static_cast<std::size_t>(a)];
  }

  Word apply(const Word& u) const {
    std::size_t total = 0;
    for (Letter a : u) {
      check_letter(a);
      total += rules_[static_cast<std::size_t>(a)].size();
    }
    Word out;
    out.reserve(total);
    for (Letter a : u) {
      const Word& img = rules_[static_cast<std::size_t>(a)];
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  /// sigma^n(a), memoized per (letter, n). All intermediate powers are cached
  /// too, so iterated callers pay each depth once.
  Word power_image(Letter a, int n) const {
    check_letter(a);
    if (n < 0) throw PreconditionError("negative power");
    if (n == 0) return Word{a};
    std::lock_guard<std::mutex> lock(memo_->mu);
    int have = n;
    while (have > 0 && !memo_->pow.count({a, have})) --have;
    Word cur = have == 0 ? Word{a} : memo_->pow.at({a, have});
    for (int m = have + 1; m <= n; ++m) {
      cur = apply(cur);
      memo_->pow.emplace(std::make_pair(a, m), cur);
    }
    return cur;
  }

  Word apply_power(const Word& u, int n) const {
    if (n < 0) throw PreconditionError("negative power");
    if (n == 0) return u;
    std::vector<Word> parts;
    parts.reserve(u.size());
    for (Letter a : u) parts.push_back(power_image(a, n));
    return concat_family(parts);
  }

  /// |sigma^n(a)| without materializing, saturating at cap.
  std::uint64_t power_length(Letter a, int n,
                             std::uint64_t cap = UINT64_C(1) << 62) const {
    check_letter(a);
    std::vector<std::uint64_t> len(size(), 1);
    for (int step = 0; step < n; ++step) {
      std::vector<std::uint64_t> next(size(), 0);
      bool all_capped = true;
      for (std::size_t b = 0; b < size(); ++b) {
        std::uint64_t sum = 0;
        for (Letter c : rules_[b]) {
          sum += len[static_cast<std::size_t>(c)];
          if (sum >= cap) {
            sum = cap;
            break;
          }
        }
        next[b] = sum;
        all_capped = all_capped && sum >= cap;
      }
      len = std::move(next);
      if (all_capped) break;
    }
    return len[static_cast<std::size_t>(a)];
  }

  /// Parses a word literal with the same token conventions as rule images.
  Word word(const std::string& text) const {
    bool single_char = true;
    for (const std::string& t : tokens_) single_char = single_char && t.size() == 1;
    std::vector<std::string> toks = split_image(text, single_char, "");
    Word w;
    w.reserve(toks.size());
    for (const std::string& t : toks) w.push_back(letter(t));
    return w;
  }

  /// Token rendering; single-character alphabets concatenate, others join
  /// with spaces (mirrors the input conventions).
  std::string format(const Word& u) const {
    bool single_char = true;
    for (const std::string& t : tokens_) single_char = single_char && t.size() == 1;
    std::string out;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!single_char && i > 0) out += ' ';
      out += token(u[i]);
    }
    return out;
  }

  std::string format(const LetterSet& s) const {
    std::string out = "{";
    bool first = true;
    for (Letter a : s) {
      if (!first) out += ',';
      first = false;
      out += token(a);
    }
    return out + "}";
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  static std::vector<std::string> split_image(const std::string& rhs, bool single_char,
                                              const std::string& lhs) {
    const std::string body = trim(rhs);
    if (body.empty())
      throw ParseError("erasing morphism unsupported" +
                       (lhs.empty() ? std::string() : " (letter '" + lhs + "')"));
    std::vector<std::string> toks;
    if (body.find_first_of(" \t") != std::string::npos) {
      std::istringstream in(body);
      std::string t;
      while (in >> t) toks.push_back(t);
    } else if (single_char) {
      for (char ch : body) toks.emplace_back(1, ch);
    } else {
      toks.push_back(body);
    }
    return toks;
  }

  void intern(const std::string& token) {
    if (index_.count(token))
      throw ParseError("duplicate rule for letter '" + token + "'");
    index_.emplace(token, static_cast<Letter>(tokens_.size()));
    tokens_.push_back(token);
  }

  void check_letter(Letter a) const {
    if (a < 0 || static_cast<std::size_t>(a) >= tokens_.size())
      throw PreconditionError("letter outside the alphabet");
  }

  struct Memo {
    std::mutex mu;
    std::map<std::pair<Letter, int>, Word> pow;
  };

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Letter> index_;
  std::vector<Word> rules_;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// Partition of the alphabet: P and PP make up the bounded letters B, the
/// rest grow. Isolation refines the growing part.
struct LetterClassification {
  LetterSet periodic;
  LetterSet preperiodic;
  LetterSet bounded;
  LetterSet growing;
  LetterSet left_isolated;
  LetterSet right_isolated;
  LetterSet non_isolated;
};

namespace detail {

/// alph(sigma^n(a)) for all a at once, via the set-valued successor map.
/// Never materializes images.
inline std::vector<LetterSet> alph_power(const Substitution& sub, int n) {
  std::vector<LetterSet> cur(sub.size());
  for (std::size_t a = 0; a < sub.size(); ++a) cur[a] = LetterSet{static_cast<Letter>(a)};
  for (int step = 0; step < n; ++step) {
    std::vector<LetterSet> next(sub.size());
    for (std::size_t a = 0; a < sub.size(); ++a) {
      LetterSet s;
      for (Letter b : alphabet_of(sub.image(static_cast<Letter>(a))))
        s = unite(s, cur[static_cast<std::size_t>(b)]);
      next[a] = std::move(s);
    }
    cur = std::move(next);
  }
  return cur;
}

inline LetterSet alph_of_power(const Substitution& sub, Letter a, int n) {
  LetterSet cur{a};
  for (int step = 0; step < n; ++step) {
    LetterSet next;
    for (Letter b : cur) next = unite(next, alphabet_of(sub.image(b)));
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

/// P, PP, B, C. A letter is periodic iff iterating single-letter images
/// returns to it before the image ever lengthens; it is bounded iff
/// alph(sigma^{|A|}(a)) consists of periodic letters.
inline LetterClassification classify_letters(const Substitution& sub) {
  LetterClassification cls;
  const std::size_t n = sub.size();
  for (std::size_t ai = 0; ai < n; ++ai) {
    const Letter a = static_cast<Letter>(ai);
    Letter x = a;
    LetterSet seen{a};
    for (;;) {
      const Word& img = sub.image(x);
      if (img.size() != 1) break;
      x = img[0];
      if (x == a) {
        cls.periodic.insert(a);
        break;
      }
      if (seen.contains(x)) break;
      seen.insert(x);
    }
  }
  const auto alph_n = detail::alph_power(sub, static_cast<int>(n));
  for (std::size_t ai = 0; ai < n; ++ai) {
    const Letter a = static_cast<Letter>(ai);
    if (is_subset(alph_n[ai], cls.periodic))
      cls.bounded.insert(a);
    else
      cls.growing.insert(a);
  }
  cls.preperiodic = difference(cls.bounded, cls.periodic);
  return cls;
}

namespace detail {

/// First (left) or last (right) growing letter of sigma(c).
inline Letter boundary_edge(const Substitution& sub, const LetterClassification& cls,
                            Letter c, bool left) {
  const Word& img = sub.image(c);
  if (left) {
    for (Letter b : img)
      if (cls.growing.contains(b)) return b;
  } else {
    for (auto it = img.rbegin(); it != img.rend(); ++it)
      if (cls.growing.contains(*it)) return *it;
  }
  throw InternalError("growing letter with fully bounded image");
}

/// Length of the bounded flank of sigma(c) on the given side.
inline std::size_t flank_length(const Substitution& sub, const LetterClassification& cls,
                                Letter c, bool left) {
  const Word& img = sub.image(c);
  std::size_t len = 0;
  if (left) {
    while (len < img.size() && cls.bounded.contains(img[len])) ++len;
  } else {
    while (len < img.size() && cls.bounded.contains(img[img.size() - 1 - len])) ++len;
  }
  return len;
}

}  // namespace detail

/// Fills the isolation sets. A growing letter is left-isolated iff it sits on
/// a cycle of the left boundary graph and some member of that cycle has a
/// non-empty bounded prefix in its image; letters off cycles never qualify.
inline void classify_isolation(const Substitution& sub, LetterClassification& cls) {
  cls.left_isolated = LetterSet{};
  cls.right_isolated = LetterSet{};
  for (bool left : {true, false}) {
    auto fc = functional_cycles(cls.growing.letters(), [&](Letter c) {
      return detail::boundary_edge(sub, cls, c, left);
    });
    for (const auto& cycle : fc.cycles) {
      bool accumulates = false;
      for (Letter c : cycle)
        accumulates = accumulates || detail::flank_length(sub, cls, c, left) > 0;
      if (!accumulates) continue;
      for (Letter c : cycle)
        (left ? cls.left_isolated : cls.right_isolated).insert(c);
    }
  }
  cls.non_isolated =
      difference(cls.growing, unite(cls.left_isolated, cls.right_isolated));
}

inline LetterClassification classify(const Substitution& sub) {
  LetterClassification cls = classify_letters(sub);
  classify_isolation(sub, cls);
  return cls;
}

inline bool is_tame(const LetterClassification& cls) {
  return cls.left_isolated.empty() && cls.right_isolated.empty();
}

/// sigma^k restricted to E, with tokens carried over. E must be closed under
/// taking letters of sigma^k images.
inline Substitution restrict(const Substitution& sub, int k, const LetterSet& E) {
  if (k < 1) throw PreconditionError("restriction power must be >= 1");
  if (E.empty()) throw PreconditionError("restriction to empty alphabet");
  std::vector<std::pair<std::string, std::vector<std::string>>> rules;
  for (Letter a : E) {
    Word img = sub.power_image(a, k);
    std::vector<std::string> toks;
    toks.reserve(img.size());
    for (Letter b : img) {
      if (!E.contains(b))
        throw PreconditionError("restriction not closed: sigma^" + std::to_string(k) +
                                "(" + sub.token(a) + ") contains '" + sub.token(b) + "'");
      toks.push_back(sub.token(b));
    }
    rules.emplace_back(sub.token(a), std::move(toks));
  }
  return Substitution::from_rules(rules);
}

}  // namespace subshift
