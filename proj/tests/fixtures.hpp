#pragma once

// Grammars, automata and species shared by the test suites.

#include <string>
#include <vector>

#include "arrowcfg/arrowcfg.hpp"

namespace fixtures {

using namespace arrowcfg;

/// S ⊏ (*,*); r1 : S -> S with image a-b; r0 : S with image ab.  L = {a^n b^n : n >= 1}
inline Grammar g_ab() {
  Grammar g;
  g.category = monoid_graph({"a", "b"});
  g.add_nonterminal("S", {"*", "*"});
  g.start = "S";
  g.add_rule("r1", "S", {"S"}, {{"a"}, {"b"}});
  g.add_rule("r0", "S", {}, {{"a", "b"}});
  return g;
}

/// c : S with image a; m : S,S -> S with image ε-ε-ε.  Parses of a^n are counted by Catalan(n-1).
inline Grammar g_amb(const std::vector<std::string>& alphabet = {"a"}) {
  Grammar g;
  g.category = monoid_graph(alphabet);
  g.add_nonterminal("S", {"*", "*"});
  g.start = "S";
  g.add_rule("c", "S", {}, {{"a"}});
  g.add_rule("m", "S", {"S", "S"}, {{}, {}, {}});
  return g;
}

/// S -> a S b | ε
inline Grammar g_eps() { return import_classical(parse_classical("s1: S -> a S b\ns0: S -> _\n")); }

/// Over end_marked({a,b}): E ⊏ (*,*) with E -> a E b | ab | E E, and the end
/// rule 0 : E -> S with image ε-$ where S ⊏ (*,top).
inline Grammar g_end() {
  Grammar g;
  g.category = end_marked(monoid_graph({"a", "b"}));
  g.add_nonterminal("S", {"*", "top"});
  g.add_nonterminal("E", {"*", "*"});
  g.start = "S";
  g.add_rule("0", "S", {"E"}, {{}, {"$"}});
  g.add_rule("e1", "E", {"E"}, {{"a"}, {"b"}});
  g.add_rule("e0", "E", {}, {{"a", "b"}});
  g.add_rule("ee", "E", {"E", "E"}, {{}, {}, {}});
  return g;
}

/// A ternary rule, for the bilinearization chain: S -> a S b S c S d | e
inline Grammar g_tern() {
  return import_classical(parse_classical("t: S -> a S b S c S d\nl: S -> e\n"));
}

/// u : S -> S with image ε-ε (a unit cycle) and c : S with image a.
inline Grammar g_unit() {
  Grammar g;
  g.category = monoid_graph({"a"});
  g.add_nonterminal("S", {"*", "*"});
  g.start = "S";
  g.add_rule("u", "S", {"S"}, {{}, {}});
  g.add_rule("c", "S", {}, {{"a"}});
  return g;
}

/// States e, o over *; a flips, b stays; initial = final = e.  L = words with an even number of a.
inline Automaton m_evena() {
  Automaton m;
  m.base = monoid_graph({"a", "b"});
  m.states = {{"e", "*"}, {"o", "*"}};
  m.transitions = {{"ea", "e", "o", "a"}, {"oa", "o", "e", "a"}, {"eb", "e", "e", "b"}, {"ob", "o", "o", "b"}};
  m.initial = "e";
  m.final = "e";
  return m;
}

/// One state looping on every letter of the base.
inline Automaton m_all(const FiniteGraph& base) {
  Automaton m;
  m.base = base;
  m.states = {{"q", base.objects().front()}};
  for (const auto& g : base.generators()) m.transitions.push_back({"t" + g.name, "q", "q", g.name});
  m.initial = m.final = "q";
  return m;
}

/// Color 1; a has arity 3, c arity 2, f arity 1, b, d, e, g arity 0.
inline Species spc_sample() {
  Species s;
  s.add_color("1");
  s.add_node({"a", {"1", "1", "1"}, "1"});
  s.add_node({"b", {}, "1"});
  s.add_node({"c", {"1", "1"}, "1"});
  s.add_node({"d", {}, "1"});
  s.add_node({"e", {}, "1"});
  s.add_node({"f", {"1"}, "1"});
  s.add_node({"g", {}, "1"});
  return s;
}

/// a(b, c(d, e), f(g))
inline DerivationTree sample_tree() {
  using T = DerivationTree;
  return T::apply("a", {T::apply("b"), T::apply("c", {T::apply("d"), T::apply("e")}), T::apply("f", {T::apply("g")})});
}

inline Path word(const FiniteGraph& c, const std::string& letters, const std::string& at = kMonoidObject) {
  std::vector<std::string> gens;
  for (char ch : letters) gens.emplace_back(1, ch);
  return make_path(c, at, gens);
}

/// All words over the one-object graph's letters (in canonical order) with at most max_len letters.
inline std::vector<Path> words_upto(const FiniteGraph& c, std::size_t max_len, const std::string& at = kMonoidObject) {
  return enumerate_paths(c, at, at, max_len);
}

inline std::string show(const Path& p) { return format_path(p); }

}  // namespace fixtures
