#pragma once

// Non-deterministic finite state automata over free categories, presented as
// generator-to-generator functors from a state graph (hence finitary and ULF),
// tree automata over free operads, the lift of a word automaton to the
// spliced-arrow operad, interval automata and a bounded ULF checker.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "arrowcfg/error.hpp"
#include "arrowcfg/freecat.hpp"
#include "arrowcfg/species.hpp"
#include "arrowcfg/spliced.hpp"

namespace arrowcfg {

struct State {
  std::string name;
  std::string over;  // object of the base
};

struct Transition {
  std::string name;
  std::string src;
  std::string dst;
  std::string over;  // generator of the base
};

struct Automaton {
  FiniteGraph base;
  std::vector<State> states;
  std::vector<Transition> transitions;
  std::string initial;
  std::string final;

  const State* find_state(const std::string& name) const {
    for (const auto& s : states)
      if (s.name == name) return &s;
    return nullptr;
  }

  const std::string& over(const std::string& state) const {
    if (auto* s = find_state(state)) return s->over;
    throw Error(ErrorKind::unknown_symbol, "no state named '" + state + "'");
  }
};

/// Typing problems: each transition must lie over a generator whose endpoints
/// are the objects under its source and target states.
inline std::vector<std::string> check(const Automaton& m) {
  std::vector<std::string> problems;
  std::set<std::string> names;
  for (const auto& s : m.states) {
    if (!names.insert(s.name).second) problems.push_back("duplicate state '" + s.name + "'");
    if (!m.base.has_object(s.over)) problems.push_back("state '" + s.name + "' lies over unknown object '" + s.over + "'");
  }
  std::set<std::string> tnames;
  for (const auto& t : m.transitions) {
    if (!tnames.insert(t.name).second) problems.push_back("duplicate transition '" + t.name + "'");
    auto* g = m.base.find_generator(t.over);
    auto* s = m.find_state(t.src);
    auto* d = m.find_state(t.dst);
    if (!g) {
      problems.push_back("transition '" + t.name + "' lies over unknown generator '" + t.over + "'");
      continue;
    }
    if (!s || !d) {
      problems.push_back("transition '" + t.name + "' has an undeclared endpoint");
      continue;
    }
    if (s->over != g->src || d->over != g->dst)
      problems.push_back("transition '" + t.name + "' from " + s->over + " to " + d->over + " cannot lie over " +
                         g->name + " : " + g->src + "->" + g->dst);
  }
  if (!m.find_state(m.initial)) problems.push_back("initial state '" + m.initial + "' is not declared");
  if (!m.find_state(m.final)) problems.push_back("final state '" + m.final + "' is not declared");
  return problems;
}

inline void require_valid(const Automaton& m) {
  auto problems = check(m);
  if (!problems.empty()) throw Error(ErrorKind::type_mismatch, "invalid automaton: " + problems.front());
}

/// The category of runs: states as objects, transitions as generators.
inline FiniteGraph state_graph(const Automaton& m) {
  FiniteGraph g;
  for (const auto& s : m.states) g.add_object(s.name);
  for (const auto& t : m.transitions) g.add_generator({t.name, t.src, t.dst});
  return g;
}

/// The automaton functor from runs to the base.
inline FreeFunctor projection(const Automaton& m) {
  FreeFunctor f{state_graph(m), m.base, {}, {}};
  for (const auto& s : m.states) f.object_map[s.name] = s.over;
  for (const auto& t : m.transitions) {
    const auto& g = m.base.generator(t.over);
    f.generator_map[t.name] = Path{g.src, g.dst, {g.name}};
  }
  return f;
}

// --- classical import -------------------------------------------------------

struct ClassicalTransition {
  std::string src;
  std::string symbol;  // "" or "_" denotes an epsilon transition
  std::string dst;
};

struct ClassicalNfa {
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  std::vector<ClassicalTransition> transitions;
  std::string initial;
  std::vector<std::string> finals;
};

inline constexpr const char* kImportedFinal = "q_f";

/// Automaton over end_marked(M[Σ]) accepting w$ iff the classical NFA accepts w.
/// A fresh state "q_f" lies over top, with one "$" transition into it from each
/// accepting state. Epsilon transitions are rejected.
inline Automaton import_classical(const ClassicalNfa& nfa) {
  Automaton m;
  m.base = end_marked(monoid_graph(nfa.alphabet));
  std::set<std::string> declared(nfa.states.begin(), nfa.states.end());
  std::string qf = kImportedFinal;
  while (declared.count(qf)) qf += "'";
  for (const auto& q : nfa.states) m.states.push_back({q, kMonoidObject});
  m.states.push_back({qf, kTopObject});
  for (const auto& t : nfa.transitions) {
    if (t.symbol.empty() || t.symbol == "_" || t.symbol == "ε")
      throw Error(ErrorKind::unsupported, "epsilon transition " + t.src + " -> " + t.dst +
                                              " (eliminate epsilon transitions before import)");
    if (!m.base.has_generator(t.symbol) || t.symbol == kEndMarker)
      throw Error(ErrorKind::unknown_symbol, "symbol '" + t.symbol + "' is not in the alphabet");
    if (!declared.count(t.src) || !declared.count(t.dst))
      throw Error(ErrorKind::unknown_symbol, "transition mentions an undeclared state");
    m.transitions.push_back({t.src + "-" + t.symbol + "->" + t.dst, t.src, t.dst, t.symbol});
  }
  for (const auto& f : nfa.finals) {
    if (!declared.count(f)) throw Error(ErrorKind::unknown_symbol, "final state '" + f + "' is not declared");
    m.transitions.push_back({f + "-$->" + qf, f, qf, kEndMarker});
  }
  m.initial = nfa.initial;
  m.final = qf;
  require_valid(m);
  return m;
}

/// Acceptance of a classical NFA run directly on the word, for cross-checking imports.
inline bool classical_accepts(const ClassicalNfa& nfa, const std::vector<std::string>& word) {
  std::set<std::string> cur{nfa.initial};
  for (const auto& a : word) {
    std::set<std::string> next;
    for (const auto& t : nfa.transitions)
      if (t.symbol == a && cur.count(t.src)) next.insert(t.dst);
    cur = std::move(next);
  }
  for (const auto& f : nfa.finals)
    if (cur.count(f)) return true;
  return false;
}

// --- runs ------------------------------------------------------------------

namespace detail {
/// transitions indexed by (source state, base generator), in name order
inline std::map<std::pair<std::string, std::string>, std::vector<const Transition*>> transition_index(
    const Automaton& m) {
  std::map<std::pair<std::string, std::string>, std::vector<const Transition*>> idx;
  for (const auto& t : m.transitions) idx[{t.src, t.over}].push_back(&t);
  for (auto& [k, v] : idx)
    std::sort(v.begin(), v.end(), [](const Transition* a, const Transition* b) { return a->name < b->name; });
  return idx;
}
}  // namespace detail

/// Whether w lifts to a run from the initial to the final state (subset DP over positions).
inline bool run_membership(const Automaton& m, const Path& w) {
  if (m.over(m.initial) != w.src || m.over(m.final) != w.dst) return false;
  auto idx = detail::transition_index(m);
  std::set<std::string> cur{m.initial};
  for (const auto& a : w.gens) {
    std::set<std::string> next;
    for (const auto& q : cur)
      if (auto it = idx.find({q, a}); it != idx.end())
        for (auto* t : it->second) next.insert(t->dst);
    if (next.empty()) return false;
    cur = std::move(next);
  }
  return cur.count(m.final) > 0;
}

/// Every run over w from state q to state q' (the fiber of w between q and q').
inline std::vector<Path> enumerate_runs(const Automaton& m, const Path& w, const std::string& q,
                                        const std::string& q2) {
  std::vector<Path> runs;
  if (m.over(q) != w.src || m.over(q2) != w.dst) return runs;
  auto idx = detail::transition_index(m);
  Path cur = Path::identity(q);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == w.gens.size()) {
      if (cur.dst == q2) runs.push_back(cur);
      return;
    }
    auto it = idx.find({cur.dst, w.gens[k]});
    if (it == idx.end()) return;
    for (auto* t : it->second) {
      std::string back = cur.dst;
      cur.gens.push_back(t->name);
      cur.dst = t->dst;
      go(k + 1);
      cur.gens.pop_back();
      cur.dst = back;
    }
  };
  go(0);
  return runs;
}

/// Every run over w, from any state over w.src to any state.
inline std::vector<Path> enumerate_all_runs(const Automaton& m, const Path& w) {
  std::vector<Path> runs;
  for (const auto& s : m.states)
    if (s.over == w.src)
      for (const auto& t : m.states)
        if (t.over == w.dst)
          for (auto& r : enumerate_runs(m, w, s.name, t.name)) runs.push_back(std::move(r));
  return runs;
}

// --- lift to spliced arrows ------------------------------------------------

/// Query-driven view of W[M]: the automaton over the spliced-arrow operad whose
/// colors are pairs of states and whose operations over w0-...-wn are tuples
/// of runs over the segments.
class WordsLift {
 public:
  explicit WordsLift(Automaton m) : m_(std::move(m)) {}

  const Automaton& automaton() const { return m_; }
  GapType designated() const { return {m_.initial, m_.final}; }

  /// All lifts of f, as spliced arrows over the state graph.
  std::vector<SplicedArrow> lifts(const SplicedArrow& f) const {
    std::vector<std::vector<Path>> tables;
    for (const auto& w : f.segments) tables.push_back(enumerate_all_runs(m_, w));
    std::vector<SplicedArrow> out;
    std::vector<Path> chosen;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
      if (k == tables.size()) {
        SplicedArrow a;
        a.segments = chosen;
        a.outer = {chosen.front().src, chosen.back().dst};
        for (std::size_t i = 0; i + 1 < chosen.size(); ++i) a.gaps.push_back({chosen[i].dst, chosen[i + 1].src});
        out.push_back(std::move(a));
        return;
      }
      for (const auto& r : tables[k]) {
        chosen.push_back(r);
        go(k + 1);
        chosen.pop_back();
      }
    };
    go(0);
    return out;
  }

  /// Lifts of f whose outer color is the given pair of states.
  std::vector<SplicedArrow> lifts(const SplicedArrow& f, const GapType& outer) const {
    std::vector<SplicedArrow> out;
    for (auto& a : lifts(f))
      if (a.outer == outer) out.push_back(std::move(a));
    return out;
  }

  /// Acceptance of a constant: some lift has color (initial, final).
  bool accepts(const Path& w) const { return !lifts(spliced_constant(w), designated()).empty(); }

 private:
  Automaton m_;
};

// --- tree automata ---------------------------------------------------------

struct TreeTransition {
  std::string name;
  std::vector<std::string> inputs;  // states
  std::string output;               // state
  std::string over;                 // node of the base species
};

/// Bottom-up tree automaton over the free operad on `base_species`.
/// `state_colors` assigns each state the base color it lies over; when the
/// base species has a single color it may be left empty.
struct TreeAutomaton {
  Species base_species;
  std::vector<std::string> states;
  std::map<std::string, std::string> state_colors;
  std::vector<TreeTransition> transitions;
  std::string accept;
};

inline std::vector<std::string> check(const TreeAutomaton& ta) {
  std::vector<std::string> problems;
  std::set<std::string> st(ta.states.begin(), ta.states.end());
  auto color_of = [&](const std::string& q) -> std::string {
    if (auto it = ta.state_colors.find(q); it != ta.state_colors.end()) return it->second;
    return ta.base_species.colors().size() == 1 ? ta.base_species.colors().front() : "";
  };
  for (const auto& t : ta.transitions) {
    const Node* x = ta.base_species.find_node(t.over);
    if (!x) {
      problems.push_back("transition '" + t.name + "' lies over unknown node '" + t.over + "'");
      continue;
    }
    if (x->arity() != t.inputs.size()) {
      problems.push_back("transition '" + t.name + "' has arity " + std::to_string(t.inputs.size()) + " but node '" +
                         x->name + "' has arity " + std::to_string(x->arity()));
      continue;
    }
    if (!st.count(t.output)) problems.push_back("transition '" + t.name + "' targets undeclared state");
    if (color_of(t.output) != x->output) problems.push_back("transition '" + t.name + "' output color mismatch");
    for (std::size_t k = 0; k < t.inputs.size(); ++k) {
      if (!st.count(t.inputs[k])) problems.push_back("transition '" + t.name + "' reads undeclared state");
      else if (color_of(t.inputs[k]) != x->inputs[k])
        problems.push_back("transition '" + t.name + "' input " + std::to_string(k) + " color mismatch");
    }
  }
  if (!st.count(ta.accept)) problems.push_back("accepting state '" + ta.accept + "' is not declared");
  return problems;
}

/// States reachable at the root of a closed tree.
inline std::set<std::string> tree_states(const TreeAutomaton& ta, const DerivationTree& t) {
  if (t.is_leaf) throw Error(ErrorKind::malformed, "tree automata run on closed trees only");
  std::vector<std::set<std::string>> kids;
  for (const auto& c : t.children) kids.push_back(tree_states(ta, c));
  std::set<std::string> out;
  for (const auto& tr : ta.transitions) {
    if (tr.over != t.label || tr.inputs.size() != kids.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < kids.size() && ok; ++k) ok = kids[k].count(tr.inputs[k]) > 0;
    if (ok) out.insert(tr.output);
  }
  return out;
}

inline bool tree_accept(const TreeAutomaton& ta, const DerivationTree& t) {
  return tree_states(ta, t).count(ta.accept) > 0;
}

// --- interval automaton ----------------------------------------------------

/// Automaton recognizing exactly {w}: states 0..|w| over the objects visited by
/// w and one transition "t<i>" from i to i+1 over the i-th generator.
inline Automaton interval_automaton(const FiniteGraph& c, const Path& w) {
  if (!is_valid_path(c, w)) throw Error(ErrorKind::malformed, "interval automaton needs a path of the category");
  Automaton m;
  m.base = c;
  auto objs = path_objects(c, w);
  for (std::size_t i = 0; i < objs.size(); ++i) m.states.push_back({std::to_string(i), objs[i]});
  for (std::size_t i = 0; i < w.gens.size(); ++i)
    m.transitions.push_back({"t" + std::to_string(i), std::to_string(i), std::to_string(i + 1), w.gens[i]});
  m.initial = "0";
  m.final = std::to_string(w.gens.size());
  return m;
}

// --- bounded ULF check ----------------------------------------------------

struct UlfViolation {
  Path alpha;        // domain path
  Path u, v;         // factorization of its image
  std::size_t lifts; // 0 or >= 2
};

/// Checks unique lifting of factorizations for every domain path with at most
/// max_len generators and every 2-factorization of its image.
inline std::optional<UlfViolation> ulf_check_bounded(const FreeFunctor& f, std::size_t max_len) {
  for (const auto& src : f.domain.objects())
    for (const auto& dst : f.domain.objects())
      for (const auto& alpha : enumerate_paths(f.domain, src, dst, max_len)) {
        Path image = apply_functor(f, alpha);
        std::vector<Path> prefix_images;
        for (std::size_t r = 0; r <= alpha.length(); ++r)
          prefix_images.push_back(apply_functor(f, subpath(f.domain, alpha, 0, r)));
        for (std::size_t s = 0; s <= image.length(); ++s) {
          Path u = subpath(f.codomain, image, 0, s);
          std::size_t lifts = 0;
          for (const auto& p : prefix_images)
            if (p == u) ++lifts;
          if (lifts != 1) return UlfViolation{alpha, u, subpath(f.codomain, image, s, image.length()), lifts};
        }
      }
  return std::nullopt;
}

}  // namespace arrowcfg
