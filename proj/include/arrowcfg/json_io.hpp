#pragma once

// JSON schemas for graphs, paths, species, trees, spliced arrows, grammars and
// automata. Reading validates structure and throws Error(malformed) with the
// offending key; semantic typing is checked by the constructors.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "arrowcfg/automaton.hpp"
#include "arrowcfg/error.hpp"
#include "arrowcfg/freecat.hpp"
#include "arrowcfg/grammar.hpp"
#include "arrowcfg/species.hpp"
#include "arrowcfg/spliced.hpp"

namespace arrowcfg {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw Error(ErrorKind::malformed, std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::malformed, std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

inline std::string str(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_string()) throw Error(ErrorKind::malformed, std::string(what) + " field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline std::vector<std::string> strings(const Json& v, const std::string& what) {
  if (!v.is_array()) throw Error(ErrorKind::malformed, what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw Error(ErrorKind::malformed, what + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline const Json& array(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_array()) throw Error(ErrorKind::malformed, std::string(what) + " field \"" + key + "\" must be an array");
  return v;
}

}  // namespace detail

// --- graphs and paths ----------------------------------------------------

inline Json to_json(const FiniteGraph& g) {
  Json gens = Json::array();
  for (const auto& x : g.generators()) gens.push_back({{"name", x.name}, {"src", x.src}, {"dst", x.dst}});
  return {{"objects", g.objects()}, {"generators", gens}};
}

inline FiniteGraph graph_from_json(const Json& j) {
  FiniteGraph g;
  for (const auto& o : detail::strings(detail::field(j, "objects", "graph"), "graph objects")) g.add_object(o);
  for (const auto& e : detail::array(j, "generators", "graph"))
    g.add_generator({detail::str(e, "name", "generator"), detail::str(e, "src", "generator"),
                     detail::str(e, "dst", "generator")});
  return g;
}

/// Non-empty paths are arrays of generator names; identities carry their object.
inline Json to_json(const Path& p) {
  if (p.is_identity()) return {{"src", p.src}, {"gens", Json::array()}};
  return Json(p.gens);
}

inline Path path_from_json(const FiniteGraph& g, const Json& j) {
  if (j.is_array()) return make_path(g, detail::strings(j, "path"));
  if (j.is_object()) {
    auto gens = j.contains("gens") ? detail::strings(j["gens"], "path gens") : std::vector<std::string>{};
    return make_path(g, detail::str(j, "src", "path"), std::move(gens));
  }
  throw Error(ErrorKind::malformed, "path must be an array of generators or {\"src\",\"gens\"}");
}

// --- species and trees ---------------------------------------------------

inline Json to_json(const Species& s) {
  Json nodes = Json::array();
  for (const auto& x : s.nodes()) nodes.push_back({{"name", x.name}, {"inputs", x.inputs}, {"output", x.output}});
  return {{"colors", s.colors()}, {"nodes", nodes}};
}

inline Species species_from_json(const Json& j) {
  Species s;
  for (const auto& c : detail::strings(detail::field(j, "colors", "species"), "species colors")) s.add_color(c);
  for (const auto& e : detail::array(j, "nodes", "species"))
    s.add_node(Node{detail::str(e, "name", "node"), detail::strings(detail::field(e, "inputs", "node"), "node inputs"),
                    detail::str(e, "output", "node")});
  return s;
}

inline Json to_json(const DerivationTree& t) {
  if (t.is_leaf) return {{"leaf", t.label}};
  Json kids = Json::array();
  for (const auto& c : t.children) kids.push_back(to_json(c));
  return {{"rule", t.label}, {"children", kids}};
}

inline DerivationTree tree_from_json(const Json& j) {
  if (j.is_object() && j.contains("leaf")) return DerivationTree::leaf(detail::str(j, "leaf", "tree leaf"));
  DerivationTree t = DerivationTree::apply(detail::str(j, "rule", "tree"));
  if (j.contains("children"))
    for (const auto& c : detail::array(j, "children", "tree")) t.children.push_back(tree_from_json(c));
  return t;
}

// --- spliced arrows --------------------------------------------------------

inline Json to_json(const GapType& t) { return {{"left", t.left}, {"right", t.right}}; }

inline GapType gap_from_json(const Json& j) { return {detail::str(j, "left", "gap type"), detail::str(j, "right", "gap type")}; }

inline Json to_json(const SplicedArrow& f) {
  Json gaps = Json::array(), segs = Json::array();
  for (const auto& g : f.gaps) gaps.push_back(to_json(g));
  for (const auto& w : f.segments) segs.push_back(w.gens);
  return {{"outer", to_json(f.outer)}, {"gaps", gaps}, {"segments", segs}};
}

/// Segment endpoints are read off the outer type and gaps.
inline SplicedArrow spliced_from_json(const FiniteGraph& c, const Json& j) {
  SplicedArrow f;
  f.outer = gap_from_json(detail::field(j, "outer", "spliced arrow"));
  for (const auto& g : detail::array(j, "gaps", "spliced arrow")) f.gaps.push_back(gap_from_json(g));
  const Json& segs = detail::array(j, "segments", "spliced arrow");
  if (segs.size() != f.gaps.size() + 1)
    throw Error(ErrorKind::malformed, "spliced arrow needs " + std::to_string(f.gaps.size() + 1) + " segments");
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const std::string& from = k == 0 ? f.outer.left : f.gaps[k - 1].right;
    f.segments.push_back(make_path(c, from, detail::strings(segs[k], "segment")));
  }
  auto problems = check_spliced(c, f);
  if (!problems.empty()) throw Error(ErrorKind::type_mismatch, "ill-typed spliced arrow: " + problems.front());
  return f;
}

// --- grammars ------------------------------------------------------------

inline Json to_json(const Grammar& g) {
  Json nts = Json::array(), rules = Json::array();
  for (const auto& c : g.species.colors()) {
    const GapType& t = g.type_of(c);
    nts.push_back({{"name", c}, {"left", t.left}, {"right", t.right}});
  }
  for (const auto& x : g.species.nodes()) {
    Json splice = Json::array();
    for (const auto& w : g.splice_of(x.name).segments) splice.push_back(w.gens);
    rules.push_back({{"name", x.name}, {"output", x.output}, {"inputs", x.inputs}, {"splice", splice}});
  }
  return {{"category", to_json(g.category)}, {"nonterminals", nts}, {"start", g.start}, {"rules", rules}};
}

inline Grammar grammar_from_json(const Json& j) {
  Grammar g;
  g.category = graph_from_json(detail::field(j, "category", "grammar"));
  for (const auto& e : detail::array(j, "nonterminals", "grammar"))
    g.add_nonterminal(detail::str(e, "name", "nonterminal"),
                      {detail::str(e, "left", "nonterminal"), detail::str(e, "right", "nonterminal")});
  g.start = detail::str(j, "start", "grammar");
  for (const auto& e : detail::array(j, "rules", "grammar")) {
    std::vector<std::vector<std::string>> segs;
    for (const auto& s : detail::array(e, "splice", "rule")) segs.push_back(detail::strings(s, "splice segment"));
    std::vector<std::string> inputs =
        e.contains("inputs") ? detail::strings(e["inputs"], "rule inputs") : std::vector<std::string>{};
    g.add_rule(detail::str(e, "name", "rule"), detail::str(e, "output", "rule"), inputs, segs);
  }
  return g;
}

// --- automata ------------------------------------------------------------

inline Json to_json(const Automaton& m) {
  Json states = Json::array(), trans = Json::array();
  for (const auto& s : m.states) states.push_back({{"name", s.name}, {"over", s.over}});
  for (const auto& t : m.transitions)
    trans.push_back({{"name", t.name}, {"src", t.src}, {"dst", t.dst}, {"over", t.over}});
  return {{"base", to_json(m.base)}, {"states", states}, {"transitions", trans}, {"initial", m.initial},
          {"final", m.final}};
}

/// With `validated` the typing conditions are enforced as well.
inline Automaton automaton_from_json(const Json& j, bool validated = true) {
  Automaton m;
  m.base = graph_from_json(detail::field(j, "base", "automaton"));
  for (const auto& e : detail::array(j, "states", "automaton"))
    m.states.push_back({detail::str(e, "name", "state"), detail::str(e, "over", "state")});
  for (const auto& e : detail::array(j, "transitions", "automaton"))
    m.transitions.push_back({detail::str(e, "name", "transition"), detail::str(e, "src", "transition"),
                             detail::str(e, "dst", "transition"), detail::str(e, "over", "transition")});
  m.initial = detail::str(j, "initial", "automaton");
  m.final = detail::str(j, "final", "automaton");
  if (validated) require_valid(m);
  return m;
}

/// {"alphabet", "states", "transitions":[{"src","symbol","dst"}], "initial", "finals"}
inline ClassicalNfa classical_nfa_from_json(const Json& j) {
  ClassicalNfa nfa;
  nfa.alphabet = detail::strings(detail::field(j, "alphabet", "classical automaton"), "alphabet");
  nfa.states = detail::strings(detail::field(j, "states", "classical automaton"), "states");
  for (const auto& e : detail::array(j, "transitions", "classical automaton"))
    nfa.transitions.push_back({detail::str(e, "src", "transition"), detail::str(e, "symbol", "transition"),
                               detail::str(e, "dst", "transition")});
  nfa.initial = detail::str(j, "initial", "classical automaton");
  nfa.finals = detail::strings(detail::field(j, "finals", "classical automaton"), "finals");
  return nfa;
}

/// Either schema: a classical automaton is recognized by its "finals" key.
inline Automaton any_automaton_from_json(const Json& j) {
  if (j.is_object() && j.contains("finals")) return import_classical(classical_nfa_from_json(j));
  return automaton_from_json(j);
}

}  // namespace arrowcfg
