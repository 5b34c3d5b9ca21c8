#pragma once

// Pullback of a grammar along an automaton functor: the categorical form of
// the Bar-Hillel product, and the intersection grammar obtained as its image.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrowcfg/automaton.hpp"
#include "arrowcfg/error.hpp"
#include "arrowcfg/grammar.hpp"

namespace arrowcfg {

inline std::string pullback_color_name(const std::string& q, const std::string& color, const std::string& q2) {
  return "(" + q + "," + color + "," + q2 + ")";
}

namespace detail {
inline std::string run_descriptor(const Path& run) {
  std::string s = run.src + ":";
  for (std::size_t k = 0; k < run.gens.size(); ++k) s += (k ? "," : "") + run.gens[k];
  return s;
}
}  // namespace detail

/// Restricts a grammar to its useful colors. When the start color is useless
/// the result has the start color alone and no rules.
inline Grammar trim(const Grammar& g) {
  auto props = properties(g);
  const auto& keep = props.useful_set;
  Grammar h;
  h.category = g.category;
  h.start = g.start;
  if (!keep.count(g.start)) {
    h.add_nonterminal(g.start, g.type_of(g.start));
    return h;
  }
  for (const auto& c : g.species.colors())
    if (keep.count(c)) h.add_nonterminal(c, g.type_of(c));
  for (const auto& x : g.species.nodes()) {
    if (!keep.count(x.output)) continue;
    if (!std::all_of(x.inputs.begin(), x.inputs.end(), [&](const std::string& c) { return keep.count(c) > 0; }))
      continue;
    h.species.add_node(x);
    h.node_splices[x.name] = g.splice_of(x.name);
  }
  return h;
}

/// Grammar over the state graph of M whose colors are triples (q, R, q') and
/// whose rules are pairs (x, runs) with runs lying over the segments of phi(x).
inline Grammar pullback_grammar(const Grammar& g, const Automaton& m, bool trimmed = true) {
  if (!(g.category == m.base)) throw Error(ErrorKind::type_mismatch, "grammar and automaton have different bases");
  require_valid(m);
  const GapType& st = g.type_of(g.start);
  if (st.left != m.over(m.initial) || st.right != m.over(m.final))
    throw Error(ErrorKind::type_mismatch, "start symbol refines " + to_string(st) + " but the automaton runs from " +
                                              m.over(m.initial) + " to " + m.over(m.final));
  Grammar h;
  h.category = state_graph(m);
  for (const auto& c : g.species.colors()) {
    const GapType& t = g.type_of(c);
    for (const auto& q : m.states)
      for (const auto& q2 : m.states)
        if (q.over == t.left && q2.over == t.right)
          h.add_nonterminal(pullback_color_name(q.name, c, q2.name), {q.name, q2.name});
  }
  h.start = pullback_color_name(m.initial, g.start, m.final);

  std::map<Path, std::vector<Path>> run_table;  // segment -> every run over it
  auto runs_over = [&](const Path& w) -> const std::vector<Path>& {
    auto it = run_table.find(w);
    if (it == run_table.end()) it = run_table.emplace(w, enumerate_all_runs(m, w)).first;
    return it->second;
  };

  for (const auto& x : g.species.nodes()) {
    const SplicedArrow& f = g.splice_of(x.name);
    std::vector<const std::vector<Path>*> tables;
    for (const auto& w : f.segments) tables.push_back(&runs_over(w));
    std::vector<const Path*> chosen;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
      if (k == tables.size()) {
        SplicedArrow a;
        Node y;
        y.name = "(" + x.name;
        for (const Path* r : chosen) {
          y.name += ";" + detail::run_descriptor(*r);
          a.segments.push_back(*r);
        }
        y.name += ")";
        a.outer = {chosen.front()->src, chosen.back()->dst};
        y.output = pullback_color_name(a.outer.left, x.output, a.outer.right);
        for (std::size_t i = 0; i < x.arity(); ++i) {
          GapType gap{chosen[i]->dst, chosen[i + 1]->src};
          a.gaps.push_back(gap);
          y.inputs.push_back(pullback_color_name(gap.left, x.inputs[i], gap.right));
        }
        h.species.add_node(y);
        h.node_splices[y.name] = std::move(a);
        return;
      }
      for (const Path& r : *tables[k]) {
        chosen.push_back(&r);
        go(k + 1);
        chosen.pop_back();
      }
    };
    go(0);
  }
  return trimmed ? trim(h) : h;
}

/// Grammar over the base recognizing L(G) ∩ L(M).
inline Grammar intersect(const Grammar& g, const Automaton& m, bool trimmed = true) {
  return functorial_image(pullback_grammar(g, m, trimmed), projection(m));
}

/// Node count of the untrimmed pullback predicted from run counts alone:
/// the sum over rules x of the product over segments of the number of runs.
inline std::size_t predicted_pullback_size(const Grammar& g, const Automaton& m) {
  std::size_t total = 0;
  for (const auto& x : g.species.nodes()) {
    std::size_t prod = 1;
    for (const auto& w : g.splice_of(x.name).segments) prod *= enumerate_all_runs(m, w).size();
    total += prod;
  }
  return total;
}

}  // namespace arrowcfg
