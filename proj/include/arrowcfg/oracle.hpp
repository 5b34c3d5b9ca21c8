#pragma once

// Brute-force ground truth for bounded sizes. Nothing here shares code with
// the parser or the product construction beyond the data types.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrowcfg/automaton.hpp"
#include "arrowcfg/freecat.hpp"
#include "arrowcfg/grammar.hpp"
#include "arrowcfg/species.hpp"

namespace arrowcfg {

/// Words of length at most max_len derivable from each color, by saturation:
/// sweep every node over every tuple of already known child words until a
/// full sweep adds nothing. Terminates because each set is bounded by the
/// finitely many paths of length <= max_len.
inline std::map<std::string, std::set<Path>> enumerate_color_languages(const Grammar& g, std::size_t max_len) {
  std::map<std::string, std::set<Path>> words;
  for (const auto& c : g.species.colors()) words[c];
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& x : g.species.nodes()) {
      const SplicedArrow& f = g.splice_of(x.name);
      // snapshot child sets so the sweep iterates stable containers
      std::vector<std::vector<Path>> kids;
      for (const auto& c : x.inputs) kids.emplace_back(words[c].begin(), words[c].end());
      std::set<Path>& out = words[x.output];
      std::function<void(std::size_t, Path)> go = [&](std::size_t k, Path acc) {
        if (acc.length() > max_len) return;
        if (k == x.arity()) {
          if (out.insert(acc).second) changed = true;
          return;
        }
        for (const auto& u : kids[k]) {
          if (acc.length() + u.length() + f.segments[k + 1].length() > max_len) continue;
          go(k + 1, path_compose(path_compose(acc, u), f.segments[k + 1]));
        }
      };
      go(0, f.segments[0]);
    }
  }
  return words;
}

/// L(G) restricted to paths with at most max_len generators.
inline std::set<Path> enumerate_language(const Grammar& g, std::size_t max_len) {
  if (!g.species.has_color(g.start)) return {};
  return enumerate_color_languages(g, max_len)[g.start];
}

/// L(M) restricted to paths with at most max_len generators, by breadth-first
/// search over pairs (base path, set of reachable states).
inline std::set<Path> enumerate_regular_language(const Automaton& m, std::size_t max_len) {
  std::set<Path> out;
  const State* init = m.find_state(m.initial);
  const State* fin = m.find_state(m.final);
  if (!init || !fin) return out;
  std::vector<std::pair<Path, std::set<std::string>>> level{{Path::identity(init->over), {m.initial}}};
  for (std::size_t len = 0;; ++len) {
    for (const auto& [p, qs] : level)
      if (qs.count(m.final) && p.dst == fin->over) out.insert(p);
    if (len == max_len) break;
    std::vector<std::pair<Path, std::set<std::string>>> next;
    for (const auto& [p, qs] : level)
      for (const Generator* gen : m.base.outgoing(p.dst)) {
        std::set<std::string> qs2;
        for (const auto& t : m.transitions)
          if (t.over == gen->name && qs.count(t.src)) qs2.insert(t.dst);
        if (qs2.empty()) continue;
        Path q = p;
        q.gens.push_back(gen->name);
        q.dst = gen->dst;
        next.emplace_back(std::move(q), std::move(qs2));
      }
    if (next.empty()) break;
    level = std::move(next);
  }
  return out;
}

struct Derivation {
  DerivationTree tree;
  Path word;
};

/// Closed trees of root `color` with at most max_nodes nodes whose image has
/// at most max_len generators, paired with that image. Generated naively by
/// exact node count with no sharing between sizes beyond memoization.
inline std::vector<Derivation> enumerate_derivations(const Grammar& g, const std::string& color,
                                                     std::size_t max_len, std::size_t max_nodes) {
  std::map<std::pair<std::string, std::size_t>, std::vector<Derivation>> exact;
  std::function<const std::vector<Derivation>&(const std::string&, std::size_t)> trees;
  trees = [&](const std::string& c, std::size_t k) -> const std::vector<Derivation>& {
    auto key = std::make_pair(c, k);
    if (auto it = exact.find(key); it != exact.end()) return it->second;
    std::vector<Derivation> out;
    for (const Node* x : g.species.nodes_into(c)) {
      const SplicedArrow& f = g.splice_of(x->name);
      std::vector<DerivationTree> kids;
      std::function<void(std::size_t, std::size_t, Path)> fill = [&](std::size_t pos, std::size_t left, Path acc) {
        if (acc.length() > max_len) return;
        if (pos == x->arity()) {
          if (left == 0) out.push_back({DerivationTree::apply(x->name, kids), acc});
          return;
        }
        std::size_t rest = x->arity() - pos - 1;
        for (std::size_t m = 1; m + rest <= left; ++m)
          for (const auto& d : trees(x->inputs[pos], m)) {
            kids.push_back(d.tree);
            fill(pos + 1, left - m, path_compose(path_compose(acc, d.word), f.segments[pos + 1]));
            kids.pop_back();
          }
      };
      if (k >= 1) fill(0, k - 1, f.segments[0]);
    }
    return exact.emplace(key, std::move(out)).first->second;
  };
  std::vector<Derivation> all;
  if (!g.species.has_color(color)) return all;
  for (std::size_t k = 1; k <= max_nodes; ++k) {
    const auto& level = trees(color, k);
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

/// Number of closed start-rooted trees with at most max_nodes nodes evaluating to each word.
inline std::map<Path, std::size_t> oracle_parse_counts(const Grammar& g, std::size_t max_len, std::size_t max_nodes) {
  std::map<Path, std::size_t> counts;
  for (const auto& d : enumerate_derivations(g, g.start, max_len, max_nodes)) ++counts[d.word];
  return counts;
}

}  // namespace arrowcfg
