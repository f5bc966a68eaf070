#pragma once

// Exhaustive census of the substitutions on {0,1} with 0 growing and image
// lengths bounded by L.  Every member's component census is checked against
// the expected cell for its generator pair, so the census doubles as an
// end-to-end regression over a complete finite family.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "subshift/components.hpp"
#include "subshift/errors.hpp"
#include "subshift/substitution.hpp"
#include "subshift/words.hpp"

namespace subshift {

struct Census2Group {
  std::string key;        // generator pair or bounded-letter case
  std::string expected;   // display form of the expected component multiset
  int members = 0;
  int mismatches = 0;
  std::vector<std::string> mismatch_examples;  // capped at 3 rule strings
};

struct Census2Result {
  int max_image_len = 3;
  int enumerated = 0;  // all image pairs
  int analyzed = 0;    // members with 0 growing
  int skipped = 0;     // pairs where 0 is bounded
  std::vector<Census2Group> groups;

  bool all_match() const {
    for (const Census2Group& g : groups)
      if (g.mismatches > 0) return false;
    return true;
  }
};

namespace census2_detail {

/// Tame cells of the two-letter table, keyed by (alph(sigma(0)), alph(sigma(1)))
/// when both letters grow; every cell has no wild component.
using TameCell = std::vector<std::pair<LetterSet, int>>;

inline const std::map<std::pair<LetterSet, LetterSet>, TameCell>& growing_cells() {
  static const std::map<std::pair<LetterSet, LetterSet>, TameCell> cells = {
      {{LetterSet{0}, LetterSet{0}}, {{LetterSet{0}, 1}}},
      {{LetterSet{0}, LetterSet{1}}, {{LetterSet{0}, 1}, {LetterSet{1}, 1}}},
      {{LetterSet{0}, LetterSet{0, 1}}, {{LetterSet{0}, 1}}},
      {{LetterSet{1}, LetterSet{0}}, {{LetterSet{0}, 2}, {LetterSet{1}, 2}}},
      {{LetterSet{1}, LetterSet{1}}, {{LetterSet{1}, 1}}},
      {{LetterSet{1}, LetterSet{0, 1}}, {{LetterSet{0, 1}, 1}}},
      {{LetterSet{0, 1}, LetterSet{0}}, {{LetterSet{0, 1}, 1}}},
      {{LetterSet{0, 1}, LetterSet{1}}, {{LetterSet{1}, 1}}},
      {{LetterSet{0, 1}, LetterSet{0, 1}}, {{LetterSet{0, 1}, 1}}},
  };
  return cells;
}

inline std::string set_text(const LetterSet& s) {
  std::string out = "{";
  bool first = true;
  for (Letter a : s) {
    if (!first) out += ",";
    out += std::to_string(a);
    first = false;
  }
  return out + "}";
}

inline std::string cell_text(const TameCell& cell) {
  std::string out;
  for (const auto& [letters, power] : cell) {
    if (!out.empty()) out += " + ";
    out += "tame(D=" + set_text(letters) + ", k=" + std::to_string(power) + ")";
  }
  return out;
}

/// All words over {0,1} of length 1..max_len in enumeration order.
inline std::vector<Word> all_images(int max_len) {
  std::vector<Word> out;
  for (int len = 1; len <= max_len; ++len)
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      Word u(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i)
        u[static_cast<std::size_t>(i)] = static_cast<Letter>((bits >> i) & 1u);
      out.push_back(std::move(u));
    }
  return out;
}

// Group identifiers: the nine growing cells in map order, then the two
// bounded-letter cases.
enum : std::size_t { kGroupTame = 9, kGroupWild = 10, kGroupSkipped = 11 };

struct MemberOutcome {
  std::size_t group = kGroupSkipped;
  bool match = true;
  std::string rules;  // only filled on mismatch
};

inline MemberOutcome analyze_member(const Word& img0, const Word& img1) {
  auto tokens_of = [](const Word& u) {
    std::vector<std::string> toks;
    toks.reserve(u.size());
    for (Letter a : u) toks.push_back(std::to_string(a));
    return toks;
  };
  const Substitution sub =
      Substitution::from_rules({{"0", tokens_of(img0)}, {"1", tokens_of(img1)}});
  const LetterClassification cls = classify(sub);
  MemberOutcome out;
  if (!cls.growing.contains(0)) return out;

  const ComponentCensus c = census(sub, cls);
  auto record = [&](bool ok) {
    out.match = ok;
    if (!ok) {
      std::ostringstream text;
      text << "0 -> " << sub.format(img0) << "; 1 -> " << sub.format(img1);
      out.rules = text.str();
    }
  };

  if (cls.bounded.contains(1)) {
    // sigma(1) = 1 exactly; tame iff sigma(0) both starts and ends with 0,
    // and then E adds the letter 1 precisely when it occurs in sigma(0).
    const bool tame_case = img0.front() == 0 && img0.back() == 0;
    if (tame_case) {
      out.group = kGroupTame;
      LetterSet expected_e{0};
      if (alphabet_of(img0).contains(1)) expected_e.insert(1);
      record(c.tmc == 1 && c.wmc == 0 && c.tame[0].growing_part.letters == LetterSet{0} &&
             c.tame[0].power == 1 && c.tame[0].reduced_alphabet == expected_e);
    } else {
      out.group = kGroupWild;
      record(c.tmc == 0 && c.wmc == 1 && c.wild[0].period_word == Word{1});
    }
    return out;
  }

  // Both letters growing: compare against the (D, D') cell; E = D since
  // there are no bounded letters to absorb.
  const auto key = std::make_pair(alphabet_of(img0), alphabet_of(img1));
  const auto& cells = growing_cells();
  const auto it = cells.find(key);
  if (it == cells.end())
    throw InternalError("two-letter census hit an unknown generator pair");
  out.group = static_cast<std::size_t>(std::distance(cells.begin(), it));

  bool ok = c.wmc == 0 && c.tame.size() == it->second.size();
  for (std::size_t i = 0; ok && i < c.tame.size(); ++i)
    ok = c.tame[i].growing_part.letters == it->second[i].first &&
         c.tame[i].power == it->second[i].second &&
         c.tame[i].reduced_alphabet == it->second[i].first;
  record(ok);
  return out;
}

}  // namespace census2_detail

/// Runs the full census.  Members are independent, so they are processed in
/// parallel chunks and merged back in enumeration order.
inline Census2Result census2(int max_image_len = 3) {
  if (max_image_len < 1) throw PreconditionError("census image length must be >= 1");
  Census2Result result;
  result.max_image_len = max_image_len;

  const std::vector<Word> images = census2_detail::all_images(max_image_len);
  const std::size_t n = images.size();
  const std::size_t total = n * n;
  result.enumerated = static_cast<int>(total);

  std::vector<census2_detail::MemberOutcome> outcomes(total);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     total / 64 + 1));
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx)
      outcomes[idx] = census2_detail::analyze_member(images[idx / n], images[idx % n]);
  };
  if (workers <= 1) {
    run_range(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      if (begin >= total) break;
      pool.emplace_back(run_range, begin, std::min(begin + chunk, total));
    }
    for (std::thread& t : pool) t.join();
  }

  // Fixed group layout: nine growing cells, then the two bounded cases.
  const auto& cells = census2_detail::growing_cells();
  for (const auto& [key, cell] : cells) {
    Census2Group g;
    g.key = "D=" + census2_detail::set_text(key.first) +
            " D'=" + census2_detail::set_text(key.second);
    g.expected = census2_detail::cell_text(cell);
    result.groups.push_back(std::move(g));
  }
  result.groups.push_back(Census2Group{
      "B={1} sigma(0) starts and ends with 0",
      "tame(D={0}, k=1)", 0, 0, {}});
  result.groups.push_back(Census2Group{
      "B={1} otherwise", "wild(1)", 0, 0, {}});

  for (const census2_detail::MemberOutcome& out : outcomes) {
    if (out.group == census2_detail::kGroupSkipped) {
      ++result.skipped;
      continue;
    }
    ++result.analyzed;
    Census2Group& g = result.groups[out.group];
    ++g.members;
    if (!out.match) {
      ++g.mismatches;
      if (g.mismatch_examples.size() < 3) g.mismatch_examples.push_back(out.rules);
    }
  }
  return result;
}

inline std::string render_census2_text(const Census2Result& r) {
  std::ostringstream out;
  out << "two-letter census, image lengths <= " << r.max_image_len << "\n";
  out << "  pairs " << r.enumerated << ", analyzed " << r.analyzed << ", skipped "
      << r.skipped << " (0 not growing)\n";
  for (const Census2Group& g : r.groups) {
    out << "  " << g.key << ": members " << g.members << ", expected " << g.expected
        << ", " << (g.mismatches == 0 ? "all match" : std::to_string(g.mismatches) + " MISMATCH");
    out << "\n";
    for (const std::string& ex : g.mismatch_examples) out << "    mismatch: " << ex << "\n";
  }
  out << "result: " << (r.all_match() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

inline nlohmann::ordered_json render_census2_json(const Census2Result& r) {
  nlohmann::ordered_json doc;
  doc["max_image_len"] = r.max_image_len;
  doc["pairs"] = r.enumerated;
  doc["analyzed"] = r.analyzed;
  doc["skipped"] = r.skipped;
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const Census2Group& g : r.groups) {
    nlohmann::ordered_json entry;
    entry["key"] = g.key;
    entry["expected"] = g.expected;
    entry["members"] = g.members;
    entry["mismatches"] = g.mismatches;
    if (!g.mismatch_examples.empty()) entry["mismatch_examples"] = g.mismatch_examples;
    groups.push_back(std::move(entry));
  }
  doc["groups"] = std::move(groups);
  doc["pass"] = r.all_match();
  return doc;
}

}  // namespace subshift
