#pragma once

// Contour categories of free operads (corners), universal grammars and tree
// contour words, the chromatic factorization, the colors automaton, the
// Chomsky-Schützenberger decomposition, and the Dyck translation.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrowcfg/automaton.hpp"
#include "arrowcfg/error.hpp"
#include "arrowcfg/freecat.hpp"
#include "arrowcfg/grammar.hpp"
#include "arrowcfg/oracle.hpp"
#include "arrowcfg/product.hpp"
#include "arrowcfg/species.hpp"

namespace arrowcfg {

enum class Orientation { up, down };

inline std::string oriented_color(const std::string& color, Orientation o) {
  return color + (o == Orientation::up ? "^u" : "^d");
}

/// Generator name of the corner (x, i).
inline std::string corner_name(const std::string& node, std::size_t i) { return node + "_" + std::to_string(i); }

struct Corner {
  std::string node;
  std::size_t index = 0;

  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

/// Corner (x,i) runs from R_i^d to R_{i+1}^u, where R_0^d stands for R^u and
/// R_{n+1}^u for R^d.
inline Generator corner_generator(const Node& x, std::size_t i) {
  const std::size_t n = x.arity();
  std::string src = i == 0 ? oriented_color(x.output, Orientation::up) : oriented_color(x.inputs[i - 1], Orientation::down);
  std::string dst = i == n ? oriented_color(x.output, Orientation::down) : oriented_color(x.inputs[i], Orientation::up);
  return {corner_name(x.name, i), std::move(src), std::move(dst)};
}

/// Free category on the corners of a species.
inline FiniteGraph contour_category(const Species& s) {
  FiniteGraph g;
  for (const auto& c : s.colors()) {
    g.add_object(oriented_color(c, Orientation::up));
    g.add_object(oriented_color(c, Orientation::down));
  }
  for (const auto& x : s.nodes())
    for (std::size_t i = 0; i <= x.arity(); ++i) g.add_generator(corner_generator(x, i));
  return g;
}

/// Corner named by a generator of contour_category(s).
inline Corner corner_of(const Species& s, const std::string& generator) {
  for (const auto& x : s.nodes())
    for (std::size_t i = 0; i <= x.arity(); ++i)
      if (corner_name(x.name, i) == generator) return {x.name, i};
  throw Error(ErrorKind::unknown_symbol, "'" + generator + "' is not a corner");
}

/// U(S, S0): each color R refines (R^u, R^d), each node x has image (x,0)-(x,1)-...-(x,n).
inline Grammar universal_grammar(const Species& s, const std::string& start) {
  if (!s.has_color(start)) throw Error(ErrorKind::unknown_symbol, "no color named '" + start + "'");
  Grammar g;
  g.category = contour_category(s);
  g.species = s;
  g.start = start;
  for (const auto& c : s.colors())
    g.color_types[c] = {oriented_color(c, Orientation::up), oriented_color(c, Orientation::down)};
  for (const auto& x : s.nodes()) {
    SplicedArrow f;
    f.outer = g.color_types[x.output];
    for (const auto& c : x.inputs) f.gaps.push_back(g.color_types[c]);
    for (std::size_t i = 0; i <= x.arity(); ++i) {
      Generator gen = corner_generator(x, i);
      f.segments.push_back(Path{gen.src, gen.dst, {gen.name}});
    }
    g.node_splices[x.name] = std::move(f);
  }
  return g;
}

/// Contour word of a closed tree: the corners met walking around it.
inline Path contour_word(const Species& s, const DerivationTree& t) {
  std::string root = root_color(s, t);
  if (!is_closed(t)) throw Error(ErrorKind::malformed, "contour words are defined for closed trees");
  Path p = Path::identity(oriented_color(root, Orientation::up));
  std::function<void(const DerivationTree&)> walk = [&](const DerivationTree& u) {
    const Node& x = s.node(u.label);
    for (std::size_t i = 0; i <= x.arity(); ++i) {
      Generator gen = corner_generator(x, i);
      p.gens.push_back(gen.name);
      p.dst = gen.dst;
      if (i < x.arity()) walk(u.children[i]);
    }
  };
  walk(t);
  return p;
}

/// Inverse of contour_word on contour words.
inline DerivationTree contour_decode(const Species& s, const Path& cw) {
  std::size_t pos = 0;
  std::function<DerivationTree()> read = [&]() -> DerivationTree {
    if (pos >= cw.gens.size()) throw Error(ErrorKind::malformed, "contour word ends inside a tree");
    Corner c = corner_of(s, cw.gens[pos++]);
    if (c.index != 0) throw Error(ErrorKind::malformed, "expected an opening corner, got " + cw.gens[pos - 1]);
    const Node& x = s.node(c.node);
    DerivationTree t = DerivationTree::apply(x.name);
    for (std::size_t i = 1; i <= x.arity(); ++i) {
      t.children.push_back(read());
      if (pos >= cw.gens.size() || corner_of(s, cw.gens[pos]) != Corner{x.name, i})
        throw Error(ErrorKind::malformed, "expected corner " + corner_name(x.name, i));
      ++pos;
    }
    return t;
  };
  DerivationTree t = read();
  if (pos != cw.gens.size()) throw Error(ErrorKind::malformed, "trailing corners after a complete tree");
  return t;
}

/// q_G: sends (x,i) to the i-th segment of phi(x) and R^u, R^d to the ends of phi(R).
inline FreeFunctor contour_interpretation(const Grammar& g) {
  FreeFunctor f{contour_category(g.species), g.category, {}, {}};
  for (const auto& c : g.species.colors()) {
    const GapType& t = g.type_of(c);
    f.object_map[oriented_color(c, Orientation::up)] = t.left;
    f.object_map[oriented_color(c, Orientation::down)] = t.right;
  }
  for (const auto& x : g.species.nodes()) {
    const SplicedArrow& a = g.splice_of(x.name);
    for (std::size_t i = 0; i <= x.arity(); ++i) f.generator_map[corner_name(x.name, i)] = a.segments[i];
  }
  return f;
}

struct ChromaticFactorization {
  Grammar nodes;          // colors are the gap types occurring in the grammar
  SpeciesMap colors;      // identity on nodes, R -> phi(R) on colors
};

inline std::string gap_color_name(const GapType& t) { return to_string(t); }

/// Splits phi into a map of species that forgets colors down to gap types,
/// followed by a chromatic grammar.
inline ChromaticFactorization chromatic_factorization(const Grammar& g) {
  ChromaticFactorization out;
  Grammar& h = out.nodes;
  h.category = g.category;
  std::set<GapType> types;
  for (const auto& c : g.species.colors()) types.insert(g.type_of(c));
  for (const auto& t : types) h.add_nonterminal(gap_color_name(t), t);
  h.start = gap_color_name(g.type_of(g.start));
  for (const auto& x : g.species.nodes()) {
    Node y{x.name, {}, gap_color_name(g.type_of(x.output))};
    for (const auto& c : x.inputs) y.inputs.push_back(gap_color_name(g.type_of(c)));
    h.species.add_node(y);
    h.node_splices[x.name] = g.splice_of(x.name);
  }
  out.colors = SpeciesMap{g.species, h.species, {}, {}};
  for (const auto& c : g.species.colors()) out.colors.color_map[c] = gap_color_name(g.type_of(c));
  for (const auto& x : g.species.nodes()) out.colors.node_map[x.name] = x.name;
  return out;
}

/// Contour(phi): functor between contour categories induced by a species map.
inline FreeFunctor contour_functor(const SpeciesMap& phi) {
  FreeFunctor f{contour_category(phi.domain), contour_category(phi.codomain), {}, {}};
  for (const auto& c : phi.domain.colors())
    for (auto o : {Orientation::up, Orientation::down})
      f.object_map[oriented_color(c, o)] = oriented_color(phi.color_map.at(c), o);
  for (const auto& x : phi.domain.nodes()) {
    const Node& y = phi.codomain.node(phi.node_map.at(x.name));
    for (std::size_t i = 0; i <= x.arity(); ++i) {
      Generator gen = corner_generator(y, i);
      f.generator_map[corner_name(x.name, i)] = Path{gen.src, gen.dst, {gen.name}};
    }
  }
  return f;
}

/// Contour(phi_colors) presented as an automaton over the contour category of
/// the chromatic species: states are oriented colors of S, transitions are
/// corners of S, each lying over the corresponding corner.
inline Automaton colors_automaton(const Grammar& g) {
  auto fac = chromatic_factorization(g);
  FreeFunctor f = contour_functor(fac.colors);
  Automaton m;
  m.base = f.codomain;
  for (const auto& o : f.domain.objects()) m.states.push_back({o, f.object_map.at(o)});
  for (const auto& gen : f.domain.generators())
    m.transitions.push_back({gen.name, gen.src, gen.dst, f.generator_map.at(gen.name).gens.front()});
  m.initial = oriented_color(g.start, Orientation::up);
  m.final = oriented_color(g.start, Orientation::down);
  return m;
}

struct CsDecomposition {
  Grammar chromatic;      // G_nodes
  Grammar universal;      // U(phi_C S, phi(start))
  Automaton colors;       // M_colors
  FreeFunctor interpretation;  // q_{G_nodes}
};

inline CsDecomposition cs_decompose(const Grammar& g) {
  require_valid(g);
  auto fac = chromatic_factorization(g);
  CsDecomposition d{fac.nodes, universal_grammar(fac.nodes.species, fac.nodes.start), colors_automaton(g),
                    contour_interpretation(fac.nodes)};
  return d;
}

/// The grammar q( U ∩ M_colors ) over the original category.
inline Grammar cs_reconstruct(const CsDecomposition& d) {
  return functorial_image(intersect(d.universal, d.colors), d.interpretation);
}

/// Bounded check of L(G) = q( L(U) ∩ L(M_colors) ) on paths of length <= max_len.
inline bool cs_check_bounded(const Grammar& g, std::size_t max_len) {
  auto d = cs_decompose(g);
  return enumerate_language(g, max_len) == enumerate_language(cs_reconstruct(d), max_len);
}

/// Bounded check of Contour(phi_colors) L(U(S,S0)) = L(U(phi_C S)) ∩ L(M_colors)
/// on contour paths of length <= max_len.
inline bool contour_identity_bounded(const Grammar& g, std::size_t max_len) {
  auto d = cs_decompose(g);
  auto fac = chromatic_factorization(g);
  FreeFunctor f = contour_functor(fac.colors);
  std::set<Path> lhs;
  for (const auto& p : enumerate_language(universal_grammar(g.species, g.start), max_len))
    lhs.insert(apply_functor(f, p));
  auto universal = enumerate_language(d.universal, max_len);
  auto regular = enumerate_regular_language(d.colors, max_len);
  std::set<Path> rhs;
  for (const auto& p : universal)
    if (regular.count(p)) rhs.insert(p);
  return lhs == rhs;
}

// --- Dyck translation ---------------------------------------------------

struct DyckLetter {
  bool open = true;  // "[" walking up an edge, "]" walking down
  std::string node;
  std::size_t index = 0;

  friend bool operator==(const DyckLetter&, const DyckLetter&) = default;
};

/// Each corner (x,i) of a node of arity n becomes two letters: "[" if i = 0
/// else "]", then "[" if i < n else "]", both annotated by (x,i).
inline std::vector<DyckLetter> dyck_translate(const Species& s, const Path& cw) {
  std::vector<DyckLetter> out;
  out.reserve(2 * cw.length());
  for (const auto& name : cw.gens) {
    Corner c = corner_of(s, name);
    const std::size_t n = s.node(c.node).arity();
    out.push_back({c.index == 0, c.node, c.index});
    out.push_back({c.index < n, c.node, c.index});
  }
  return out;
}

/// Inverse of dyck_translate; rejects odd length, pairs with different
/// annotations, and letters violating the orientation rules.
inline Path dyck_decode(const Species& s, const std::vector<DyckLetter>& letters) {
  if (letters.size() % 2) throw Error(ErrorKind::malformed, "Dyck word has odd length");
  if (letters.empty()) throw Error(ErrorKind::malformed, "empty Dyck word has no source object");
  FiniteGraph c = contour_category(s);
  std::vector<std::string> gens;
  for (std::size_t k = 0; k < letters.size(); k += 2) {
    const DyckLetter& a = letters[k];
    const DyckLetter& b = letters[k + 1];
    if (a.node != b.node || a.index != b.index)
      throw Error(ErrorKind::malformed, "letters " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                            " belong to different corners");
    const Node* x = s.find_node(a.node);
    if (!x || a.index > x->arity()) throw Error(ErrorKind::unknown_symbol, "no corner (" + a.node + "," +
                                                                                std::to_string(a.index) + ")");
    if (a.open != (a.index == 0) || b.open != (a.index < x->arity()))
      throw Error(ErrorKind::malformed, "orientation rule violated at letter " + std::to_string(k));
    gens.push_back(corner_name(a.node, a.index));
  }
  return make_path(c, std::move(gens));
}

/// Bracket rendering, one space between the two-letter groups of each corner.
inline std::string format_dyck(const std::vector<DyckLetter>& letters) {
  std::string s;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (k && k % 2 == 0) s += ' ';
    s += letters[k].open ? '[' : ']';
  }
  return s;
}

/// Whether the bracket word never dips below zero and ends balanced.
inline bool dyck_balanced(const std::vector<DyckLetter>& letters) {
  long depth = 0;
  for (const auto& l : letters) {
    depth += l.open ? 1 : -1;
    if (depth < 0) return false;
  }
  return depth == 0;
}

/// Index of the partner of every bracket (stack matching); empty when unbalanced.
inline std::vector<std::size_t> dyck_matching(const std::vector<DyckLetter>& letters) {
  std::vector<std::size_t> partner(letters.size()), stack;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (letters[k].open) {
      stack.push_back(k);
    } else {
      if (stack.empty()) return {};
      partner[k] = stack.back();
      partner[stack.back()] = k;
      stack.pop_back();
    }
  }
  if (!stack.empty()) return {};
  return partner;
}

}  // namespace arrowcfg
