#pragma once

// Input loading and output rendering for the analysis pipeline: structured
// JSON, plain text, and DOT.  All renderers iterate containers with a fixed
// order so that identical inputs produce byte-identical output.

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "subshift/alphabet_graph.hpp"
#include "subshift/components.hpp"
#include "subshift/errors.hpp"
#include "subshift/substitution.hpp"
#include "subshift/words.hpp"

namespace subshift {

using json = nlohmann::ordered_json;

/// Accepts {"rules": {lhs: image, ...}}; images are either plain strings
/// (tokenized like the text format) or arrays of tokens.  Letters are
/// interned in rule order, matching the text loader.
inline Substitution parse_substitution_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_object())
    throw ParseError("JSON input must be an object with a \"rules\" object");

  std::string lines;
  for (const auto& [lhs, rhs] : doc["rules"].items()) {
    lines += lhs;
    lines += " -> ";
    if (rhs.is_string()) {
      lines += rhs.get<std::string>();
    } else if (rhs.is_array()) {
      bool first = true;
      for (const auto& tok : rhs) {
        if (!tok.is_string()) throw ParseError("rule images must be strings or string arrays");
        if (!first) lines += ' ';
        lines += tok.get<std::string>();
        first = false;
      }
    } else {
      throw ParseError("rule images must be strings or string arrays");
    }
    lines += '\n';
  }
  return Substitution::parse(lines);
}

/// Full analysis of one substitution; everything downstream renders from
/// this snapshot.
struct Analysis {
  LetterClassification cls;
  std::vector<MinimalAlphabet> minimal;
  ComponentCensus comps;
  DynamicsGraph gt;
  DynamicsGraph gw;
  bool bounds_ok = false;
  bool essentially = false;
};

inline Analysis analyze(const Substitution& sub) {
  Analysis a;
  a.cls = classify(sub);
  a.minimal = minimal_alphabets(sub, a.cls);
  a.comps = census(sub, a.cls);
  a.gt = tame_dynamics(sub, a.cls, a.comps.tame);
  a.gw = wild_dynamics(sub, a.cls, a.comps.wild);
  a.bounds_ok = check_bounds(a.cls, a.comps);
  a.essentially = essentially_minimal(a.comps);
  return a;
}

inline std::string tame_label(const Substitution& sub, const TameComponent& t) {
  std::string power = t.power == 1 ? "σ" : "σ^" + std::to_string(t.power);
  return "X(" + power + "|" + sub.format(t.reduced_alphabet) + ")";
}

inline std::string wild_label(const Substitution& sub, const WildComponent& w) {
  return "X(ω(" + sub.format(w.period_word) + ")ω)";
}

/// Which counting inequality applied and with which numbers.
inline std::string bounds_detail(const LetterClassification& cls,
                                 const ComponentCensus& census) {
  const int A = static_cast<int>(cls.bounded.size() + cls.growing.size());
  const int B = static_cast<int>(cls.bounded.size());
  const int C = static_cast<int>(cls.growing.size());
  std::ostringstream out;
  out << "tmc=" << census.tmc << " <= |C_niso|=" << cls.non_isolated.size() << ", wmc="
      << census.wmc << " <= |C_liso|+|C_riso|="
      << cls.left_isolated.size() + cls.right_isolated.size() << ", ";
  if (B == 0)
    out << "|B|=0: mc=" << census.mc << " <= |A|=" << A;
  else if (B == 1)
    out << "|B|=1: mc=" << census.mc << " <= |A|-1=" << A - 1;
  else
    out << "|B|=" << B << ": mc=" << census.mc << " <= 2|C|=" << 2 * C
        << " <= 2|A|-4=" << 2 * A - 4;
  return out.str();
}

namespace render_detail {

inline json token_array(const Substitution& sub, const LetterSet& s) {
  json arr = json::array();
  for (Letter a : s) arr.push_back(sub.token(a));
  return arr;
}

}  // namespace render_detail

inline json render_json(const Substitution& sub, const Analysis& a) {
  json doc;

  json rules = json::object();
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const Letter c = static_cast<Letter>(i);
    rules[sub.token(c)] = sub.format(sub.image(c));
  }
  doc["input"] = {{"alphabet", render_detail::token_array(sub, sub.alphabet())},
                  {"rules", std::move(rules)}};

  doc["classification"] = {
      {"growing", render_detail::token_array(sub, a.cls.growing)},
      {"bounded", render_detail::token_array(sub, a.cls.bounded)},
      {"periodic", render_detail::token_array(sub, a.cls.periodic)},
      {"preperiodic", render_detail::token_array(sub, a.cls.preperiodic)},
      {"left_isolated", render_detail::token_array(sub, a.cls.left_isolated)},
      {"right_isolated", render_detail::token_array(sub, a.cls.right_isolated)},
      {"non_isolated", render_detail::token_array(sub, a.cls.non_isolated)},
      {"tame", is_tame(a.cls)}};

  json minimal = json::array();
  for (const MinimalAlphabet& m : a.minimal)
    minimal.push_back({{"letters", render_detail::token_array(sub, m.letters)},
                       {"period", m.period}});
  doc["minimal_alphabets"] = std::move(minimal);

  json tame = json::array();
  for (const TameComponent& t : a.comps.tame)
    tame.push_back({{"label", tame_label(sub, t)},
                    {"alphabet", render_detail::token_array(sub, t.reduced_alphabet)},
                    {"growing_part", render_detail::token_array(sub, t.growing_part.letters)},
                    {"power", t.power}});
  json wild = json::array();
  for (const WildComponent& w : a.comps.wild) {
    json prov = json::array();
    for (const auto& [c, side] : w.provenance)
      prov.push_back({{"letter", sub.token(c)}, {"side", side_name(side)}});
    wild.push_back({{"label", wild_label(sub, w)},
                    {"word", sub.format(w.period_word)},
                    {"provenance", std::move(prov)}});
  }
  doc["components"] = {{"tame", std::move(tame)}, {"wild", std::move(wild)}};

  doc["counts"] = {{"tame", a.comps.tmc}, {"wild", a.comps.wmc}, {"total", a.comps.mc}};
  doc["bounds"] = {{"satisfied", a.bounds_ok}, {"detail", bounds_detail(a.cls, a.comps)}};
  doc["essentially_minimal"] = a.essentially;

  json dyn_tame = json::object();
  for (std::size_t i = 0; i < a.comps.tame.size(); ++i)
    dyn_tame[tame_label(sub, a.comps.tame[i])] =
        json::array({tame_label(sub, a.comps.tame[a.gt.successor[i]])});
  json dyn_wild = json::object();
  for (std::size_t i = 0; i < a.comps.wild.size(); ++i)
    dyn_wild[wild_label(sub, a.comps.wild[i])] =
        json::array({wild_label(sub, a.comps.wild[a.gw.successor[i]])});
  doc["dynamics"] = {{"tame", std::move(dyn_tame)}, {"wild", std::move(dyn_wild)}};

  return doc;
}

inline std::string render_text(const Substitution& sub, const Analysis& a) {
  std::ostringstream out;
  out << "substitution on " << sub.size() << " letters\n";
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const Letter c = static_cast<Letter>(i);
    out << "  " << sub.token(c) << " -> " << sub.format(sub.image(c)) << "\n";
  }

  out << "classification\n";
  out << "  growing (C): " << sub.format(a.cls.growing) << "\n";
  out << "  bounded (B): " << sub.format(a.cls.bounded) << "\n";
  out << "  periodic (P): " << sub.format(a.cls.periodic) << "\n";
  out << "  preperiodic (PP): " << sub.format(a.cls.preperiodic) << "\n";
  out << "  left isolated: " << sub.format(a.cls.left_isolated) << "\n";
  out << "  right isolated: " << sub.format(a.cls.right_isolated) << "\n";
  out << "  non-isolated: " << sub.format(a.cls.non_isolated) << "\n";
  out << "  tame substitution: " << (is_tame(a.cls) ? "yes" : "no") << "\n";

  out << "minimal alphabets\n";
  for (const MinimalAlphabet& m : a.minimal)
    out << "  " << sub.format(m.letters) << " period " << m.period << "\n";

  out << "components\n";
  for (const TameComponent& t : a.comps.tame)
    out << "  tame " << tame_label(sub, t) << " D=" << sub.format(t.growing_part.letters)
        << " k=" << t.power << "\n";
  for (const WildComponent& w : a.comps.wild) {
    out << "  wild " << wild_label(sub, w) << " from";
    for (const auto& [c, side] : w.provenance)
      out << " " << side_name(side) << "(" << sub.token(c) << ")";
    out << "\n";
  }

  out << "counts\n";
  out << "  tame " << a.comps.tmc << " wild " << a.comps.wmc << " total " << a.comps.mc
      << "\n";
  out << "bounds\n";
  out << "  " << (a.bounds_ok ? "satisfied" : "VIOLATED") << ": "
      << bounds_detail(a.cls, a.comps) << "\n";
  out << "essentially minimal: " << (a.essentially ? "yes" : "no") << "\n";

  out << "dynamics\n";
  for (std::size_t i = 0; i < a.comps.tame.size(); ++i)
    out << "  σ̃ " << tame_label(sub, a.comps.tame[i]) << " -> "
        << tame_label(sub, a.comps.tame[a.gt.successor[i]]) << "\n";
  for (std::size_t i = 0; i < a.comps.wild.size(); ++i)
    out << "  σ̃ " << wild_label(sub, a.comps.wild[i]) << " -> "
        << wild_label(sub, a.comps.wild[a.gw.successor[i]]) << "\n";
  return out.str();
}

namespace render_detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace render_detail

/// Singleton orbits of the alphabet graph; minimal alphabets are drawn with
/// doubled borders.
inline std::string dot_orbits(const Substitution& sub, const Analysis& a) {
  std::map<LetterSet, LetterSet> edges;
  for (Letter c : a.cls.growing) {
    const AlphabetOrbit orb = orbit(sub, a.cls, LetterSet{c});
    for (std::size_t t = 0; t + 1 < orb.preperiod.size() + orb.cycle.size(); ++t)
      edges[orb.at(t)] = orb.at(t + 1);
    edges[orb.cycle.back()] = orb.at(orb.preperiod.size());
  }
  std::ostringstream out;
  out << "digraph orbits {\n";
  for (const auto& entry : edges) {
    const LetterSet& node = entry.first;
    out << "  " << render_detail::quote(sub.format(node));
    for (const MinimalAlphabet& m : a.minimal)
      if (m.letters == node) {
        out << " [peripheries=2]";
        break;
      }
    out << ";\n";
  }
  for (const auto& [node, target] : edges)
    out << "  " << render_detail::quote(sub.format(node)) << " -> "
        << render_detail::quote(sub.format(target)) << ";\n";
  out << "}\n";
  return out.str();
}

/// One boundary graph; cycle letters are drawn with thicker borders.
inline std::string dot_boundary(const Substitution& sub, const Analysis& a, Side side) {
  const BoundaryGraph g = build_boundary_graph(sub, a.cls, side);
  const char* tag = side == Side::left ? "GL" : "GR";
  const char* label = side == Side::left ? "L" : "R";
  std::ostringstream out;
  out << "digraph " << tag << " {\n";
  for (Letter c : a.cls.growing) {
    out << "  " << render_detail::quote(sub.token(c));
    if (g.on_cycle(c)) out << " [penwidth=2]";
    out << ";\n";
  }
  for (Letter c : a.cls.growing)
    out << "  " << render_detail::quote(sub.token(c)) << " -> "
        << render_detail::quote(sub.token(g.edge.at(c))) << " [label=" << render_detail::quote(label)
        << "];\n";
  out << "}\n";
  return out.str();
}

/// Induced dynamics on one component family.
inline std::string dot_dynamics(const Substitution& sub, const Analysis& a,
                                DynamicsGraph::Kind kind) {
  const bool tame = kind == DynamicsGraph::Kind::tame;
  std::vector<std::string> labels;
  const std::vector<std::size_t>& successor =
      tame ? a.gt.successor : a.gw.successor;
  if (tame)
    for (const TameComponent& t : a.comps.tame) labels.push_back(tame_label(sub, t));
  else
    for (const WildComponent& w : a.comps.wild) labels.push_back(wild_label(sub, w));
  std::ostringstream out;
  out << "digraph " << (tame ? "Gt" : "Gw") << " {\n";
  for (const std::string& l : labels) out << "  " << render_detail::quote(l) << ";\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << "  " << render_detail::quote(labels[i]) << " -> "
        << render_detail::quote(labels[successor[i]]) << " [label=" << render_detail::quote("σ̃")
        << "];\n";
  out << "}\n";
  return out.str();
}

/// Rebuilds a component census from a rendered report, for replaying the
/// oracle against previously published components.
inline ComponentCensus parse_report_components(const Substitution& sub, const json& doc) {
  if (!doc.is_object() || !doc.contains("components"))
    throw ParseError("report is missing the components block");
  const json& comps = doc["components"];
  ComponentCensus census;

  auto letter_of = [&](const std::string& token) {
    if (!sub.has_token(token))
      throw ParseError("report names a letter '" + token + "' outside the alphabet");
    return sub.letter(token);
  };

  if (comps.contains("tame"))
    for (const json& entry : comps["tame"]) {
      TameComponent t;
      for (const json& tok : entry.at("alphabet"))
        t.reduced_alphabet.insert(letter_of(tok.get<std::string>()));
      for (const json& tok : entry.at("growing_part"))
        t.growing_part.letters.insert(letter_of(tok.get<std::string>()));
      t.power = entry.at("power").get<int>();
      t.growing_part.period = t.power;
      census.tame.push_back(std::move(t));
    }
  if (comps.contains("wild"))
    for (const json& entry : comps["wild"]) {
      WildComponent w;
      try {
        w.period_word = sub.word(entry.at("word").get<std::string>());
      } catch (const PreconditionError&) {
        throw ParseError("report names a letter outside the alphabet in word '" +
                         entry.at("word").get<std::string>() + "'");
      }
      if (entry.contains("provenance"))
        for (const json& p : entry["provenance"]) {
          const std::string side = p.at("side").get<std::string>();
          if (side != "left" && side != "right")
            throw ParseError("provenance side must be left or right");
          w.provenance.emplace_back(letter_of(p.at("letter").get<std::string>()),
                                    side == "left" ? Side::left : Side::right);
        }
      census.wild.push_back(std::move(w));
    }

  census.tmc = static_cast<int>(census.tame.size());
  census.wmc = static_cast<int>(census.wild.size());
  census.mc = census.tmc + census.wmc;
  return census;
}

}  // namespace subshift
