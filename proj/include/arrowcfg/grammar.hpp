#pragma once

// Context-free grammars of arrows: a finite pointed species together with a
// species map into the spliced-arrow operad of a free category.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arrowcfg/error.hpp"
#include "arrowcfg/freecat.hpp"
#include "arrowcfg/species.hpp"
#include "arrowcfg/spliced.hpp"

namespace arrowcfg {

struct Grammar {
  FiniteGraph category;
  Species species;
  std::string start;
  std::map<std::string, GapType> color_types;         // phi on colors
  std::map<std::string, SplicedArrow> node_splices;   // phi on nodes

  /// Declares a nonterminal refining the gap type (left,right).
  void add_nonterminal(const std::string& name, GapType type) {
    species.add_color(name);
    color_types[name] = std::move(type);
  }

  /// Adds a rule `name : inputs -> output` whose image is the spliced arrow
  /// with the given segments (generator names). Segment endpoints are read
  /// off the declared gap types, so empty segments need no annotation.
  void add_rule(const std::string& name, const std::string& output, const std::vector<std::string>& inputs,
                const std::vector<std::vector<std::string>>& segments) {
    if (segments.size() != inputs.size() + 1)
      throw Error(ErrorKind::malformed, "rule '" + name + "' needs " + std::to_string(inputs.size() + 1) +
                                            " segments, got " + std::to_string(segments.size()));
    species.add_node(Node{name, inputs, output});
    SplicedArrow f;
    f.outer = type_of(output);
    for (const auto& c : inputs) f.gaps.push_back(type_of(c));
    for (std::size_t k = 0; k < segments.size(); ++k) {
      const std::string& from = k == 0 ? f.outer.left : f.gaps[k - 1].right;
      f.segments.push_back(make_path(category, from, segments[k]));
    }
    auto problems = check_spliced(f);
    if (!problems.empty()) throw Error(ErrorKind::type_mismatch, "rule '" + name + "': " + problems.front());
    node_splices[name] = std::move(f);
  }

  const GapType& type_of(const std::string& color) const {
    auto it = color_types.find(color);
    if (it == color_types.end()) throw Error(ErrorKind::unknown_symbol, "no nonterminal named '" + color + "'");
    return it->second;
  }

  const SplicedArrow& splice_of(const std::string& node) const {
    auto it = node_splices.find(node);
    if (it == node_splices.end()) throw Error(ErrorKind::unknown_symbol, "no rule named '" + node + "'");
    return it->second;
  }
};

/// Checks that phi is a species map into W[category]; returns one line per problem.
inline std::vector<std::string> validate(const Grammar& g) {
  std::vector<std::string> report;
  if (!g.species.has_color(g.start)) report.push_back("start symbol '" + g.start + "' is not declared");
  for (const auto& c : g.species.colors()) {
    auto it = g.color_types.find(c);
    if (it == g.color_types.end()) {
      report.push_back("nonterminal '" + c + "' has no gap type");
      continue;
    }
    if (!g.category.has_object(it->second.left) || !g.category.has_object(it->second.right))
      report.push_back("nonterminal '" + c + "' refines " + to_string(it->second) + " with unknown objects");
  }
  for (const auto& x : g.species.nodes()) {
    auto it = g.node_splices.find(x.name);
    if (it == g.node_splices.end()) {
      report.push_back("rule '" + x.name + "' has no spliced arrow");
      continue;
    }
    const SplicedArrow& f = it->second;
    for (const auto& p : check_spliced(g.category, f)) report.push_back("rule '" + x.name + "': " + p);
    auto ct = g.color_types.find(x.output);
    if (ct != g.color_types.end() && f.outer != ct->second)
      report.push_back("rule '" + x.name + "': outer type " + to_string(f.outer) + " but output " + x.output +
                       " refines " + to_string(ct->second));
    if (f.gaps.size() != x.arity()) {
      report.push_back("rule '" + x.name + "': arity " + std::to_string(x.arity()) + " but spliced arrow has " +
                       std::to_string(f.gaps.size()) + " gaps");
      continue;
    }
    for (std::size_t k = 0; k < x.arity(); ++k) {
      auto it2 = g.color_types.find(x.inputs[k]);
      if (it2 != g.color_types.end() && f.gaps[k] != it2->second)
        report.push_back("rule '" + x.name + "': gap " + std::to_string(k) + " has type " + to_string(f.gaps[k]) +
                         " but input " + x.inputs[k] + " refines " + to_string(it2->second));
    }
  }
  return report;
}

inline void require_valid(const Grammar& g) {
  auto report = validate(g);
  if (!report.empty()) throw Error(ErrorKind::type_mismatch, "invalid grammar: " + report.front());
}

// --- classical grammars ---------------------------------------------------

struct ClassicalProduction {
  std::string name;
  std::string lhs;
  std::vector<std::string> rhs;  // terminals and nonterminals
};

struct ClassicalGrammar {
  std::vector<std::string> alphabet;
  std::vector<std::string> nonterminals;
  std::string start;
  std::vector<ClassicalProduction> productions;
};

/// Grammar over M[Σ]: rule R -> w0 R1 w1 ... Rn wn becomes a node with image w0-...-wn.
inline Grammar import_classical(const ClassicalGrammar& cg) {
  Grammar g;
  g.category = monoid_graph(cg.alphabet);
  const GapType star{kMonoidObject, kMonoidObject};
  std::set<std::string> nts(cg.nonterminals.begin(), cg.nonterminals.end());
  for (const auto& a : cg.alphabet)
    if (nts.count(a)) throw Error(ErrorKind::malformed, "'" + a + "' is both a terminal and a nonterminal");
  for (const auto& n : cg.nonterminals) g.add_nonterminal(n, star);
  if (!nts.count(cg.start)) throw Error(ErrorKind::unknown_symbol, "start symbol '" + cg.start + "' is not declared");
  g.start = cg.start;
  for (const auto& p : cg.productions) {
    if (!nts.count(p.lhs)) throw Error(ErrorKind::unknown_symbol, "unknown nonterminal '" + p.lhs + "'");
    std::vector<std::string> inputs;
    std::vector<std::vector<std::string>> segments(1);
    for (const auto& sym : p.rhs) {
      if (nts.count(sym)) {
        inputs.push_back(sym);
        segments.emplace_back();
      } else if (g.category.has_generator(sym)) {
        segments.back().push_back(sym);
      } else {
        throw Error(ErrorKind::unknown_symbol, "unknown symbol '" + sym + "' in production '" + p.name + "'");
      }
    }
    g.add_rule(p.name, p.lhs, inputs, segments);
  }
  return g;
}

/// Parses lines of the form `[name:] R -> w0 R1 w1 ... | ...` (symbols separated
/// by whitespace, "_" for the empty word, "#" starts a comment). Nonterminals
/// are the left-hand sides; the first one is the start symbol.
inline ClassicalGrammar parse_classical(const std::string& text) {
  struct Line {
    std::string name, lhs;
    std::vector<std::vector<std::string>> alternatives;
  };
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos && (hash == 0 || std::isspace((unsigned char)raw[hash - 1])))
      raw.erase(hash);
    std::istringstream toks(raw);
    std::vector<std::string> t;
    for (std::string s; toks >> s;) t.push_back(s);
    if (t.empty()) continue;
    Line l;
    std::size_t pos = 0;
    if (t[0].size() > 1 && t[0].back() == ':') {
      l.name = t[0].substr(0, t[0].size() - 1);
      pos = 1;
    }
    if (pos + 1 >= t.size() || t[pos + 1] != "->")
      throw Error(ErrorKind::malformed, "line " + std::to_string(lineno) + ": expected 'R -> ...'");
    l.lhs = t[pos];
    l.alternatives.emplace_back();
    for (std::size_t k = pos + 2; k < t.size(); ++k) {
      if (t[k] == "|")
        l.alternatives.emplace_back();
      else if (t[k] != "_")
        l.alternatives.back().push_back(t[k]);
    }
    if (!l.name.empty() && l.alternatives.size() > 1)
      throw Error(ErrorKind::malformed, "line " + std::to_string(lineno) + ": a named rule cannot have alternatives");
    lines.push_back(std::move(l));
  }
  if (lines.empty()) throw Error(ErrorKind::malformed, "grammar has no productions");

  ClassicalGrammar cg;
  std::set<std::string> nts;
  for (const auto& l : lines)
    if (nts.insert(l.lhs).second) cg.nonterminals.push_back(l.lhs);
  cg.start = lines.front().lhs;
  std::set<std::string> sigma;
  std::map<std::string, std::size_t> counter;
  for (const auto& l : lines)
    for (const auto& alt : l.alternatives) {
      std::string name = l.name.empty() ? l.lhs + "." + std::to_string(counter[l.lhs]++) : l.name;
      for (const auto& sym : alt)
        if (!nts.count(sym) && sigma.insert(sym).second) cg.alphabet.push_back(sym);
      cg.productions.push_back({name, l.lhs, alt});
    }
  std::sort(cg.alphabet.begin(), cg.alphabet.end());
  return cg;
}

/// Classical text of a grammar over a one-object category; inverse of parse_classical + import.
inline std::string export_classical(const Grammar& g) {
  if (g.category.objects().size() != 1)
    throw Error(ErrorKind::unsupported, "classical export needs a one-object category");
  std::ostringstream out;
  auto emit = [&](const Node& x) {
    const SplicedArrow& f = g.splice_of(x.name);
    out << x.name << ": " << x.output << " ->";
    std::size_t symbols = 0;
    for (std::size_t k = 0; k < f.segments.size(); ++k) {
      for (const auto& a : f.segments[k].gens) out << ' ' << a, ++symbols;
      if (k < x.arity()) out << ' ' << x.inputs[k], ++symbols;
    }
    if (symbols == 0) out << " _";
    out << '\n';
  };
  for (const auto& x : g.species.nodes())
    if (x.output == g.start) emit(x);
  for (const auto& x : g.species.nodes())
    if (x.output != g.start) emit(x);
  return out.str();
}

// --- evaluation -------------------------------------------------------------

/// Image of a derivation under the functor F(S) -> W[C] induced by phi.
inline SplicedArrow eval_tree(const Grammar& g, const DerivationTree& t) {
  if (t.is_leaf) return spliced_identity(g.type_of(t.label));
  const SplicedArrow& f = g.splice_of(t.label);
  const Node& x = g.species.node(t.label);
  if (t.children.size() != x.arity())
    throw Error(ErrorKind::type_mismatch, "node '" + x.name + "' applied to " + std::to_string(t.children.size()) +
                                              " children");
  std::vector<SplicedArrow> args;
  args.reserve(t.children.size());
  for (const auto& c : t.children) args.push_back(eval_tree(g, c));
  return spliced_compose_parallel(f, args);
}

// --- properties -------------------------------------------------------------

struct GrammarProperties {
  bool linear = false;
  bool left_linear = false;
  bool right_linear = false;
  bool bilinear = false;
  bool cnf = false;
  std::set<std::string> nullable_set;
  std::set<std::string> productive_set;
  std::set<std::string> reachable_set;  // some unary operation R -> start exists
  std::set<std::string> useful_set;
};

/// Colors admitting a closed derivation (least fixed point).
inline std::set<std::string> productive_colors(const Grammar& g) {
  std::set<std::string> prod;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& x : g.species.nodes()) {
      if (prod.count(x.output)) continue;
      if (std::all_of(x.inputs.begin(), x.inputs.end(), [&](const std::string& c) { return prod.count(c) > 0; })) {
        prod.insert(x.output);
        changed = true;
      }
    }
  }
  return prod;
}

/// Colors R admitting an open derivation R -> start: start itself, and R_k
/// whenever some node x : R_1..R_n -> R has R reachable and every other input productive.
inline std::set<std::string> reachable_colors(const Grammar& g, const std::set<std::string>& productive) {
  std::set<std::string> reach;
  if (g.species.has_color(g.start)) reach.insert(g.start);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& x : g.species.nodes()) {
      if (!reach.count(x.output)) continue;
      for (std::size_t k = 0; k < x.arity(); ++k) {
        if (reach.count(x.inputs[k])) continue;
        bool others = true;
        for (std::size_t j = 0; j < x.arity() && others; ++j)
          if (j != k && !productive.count(x.inputs[j])) others = false;
        if (others) {
          reach.insert(x.inputs[k]);
          changed = true;
        }
      }
    }
  }
  return reach;
}

inline GrammarProperties properties(const Grammar& g) {
  GrammarProperties p;
  const auto& nodes = g.species.nodes();
  auto arity_all = [&](auto pred) {
    return std::all_of(nodes.begin(), nodes.end(), [&](const Node& x) { return pred(x); });
  };
  p.linear = arity_all([](const Node& x) { return x.arity() <= 1; });
  p.bilinear = arity_all([](const Node& x) { return x.arity() <= 2; });
  p.left_linear = p.linear && arity_all([&](const Node& x) {
                    return x.arity() != 1 || g.splice_of(x.name).segments[0].is_identity();
                  });
  p.right_linear = p.linear && arity_all([&](const Node& x) {
                     return x.arity() != 1 || g.splice_of(x.name).segments[1].is_identity();
                   });
  p.cnf = arity_all([&](const Node& x) {
    const SplicedArrow& f = g.splice_of(x.name);
    if (std::find(x.inputs.begin(), x.inputs.end(), g.start) != x.inputs.end()) return false;
    if (x.arity() == 2)
      return std::all_of(f.segments.begin(), f.segments.end(), [](const Path& w) { return w.is_identity(); });
    if (x.arity() == 0) return f.segments[0].length() == 1 || (x.output == g.start && f.segments[0].is_identity());
    return false;
  });

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& x : nodes) {
      if (p.nullable_set.count(x.output)) continue;
      const SplicedArrow& f = g.splice_of(x.name);
      bool empty = std::all_of(f.segments.begin(), f.segments.end(), [](const Path& w) { return w.is_identity(); });
      bool inputs = std::all_of(x.inputs.begin(), x.inputs.end(),
                                [&](const std::string& c) { return p.nullable_set.count(c) > 0; });
      if (empty && inputs) {
        p.nullable_set.insert(x.output);
        changed = true;
      }
    }
  }
  p.productive_set = productive_colors(g);
  p.reachable_set = reachable_colors(g, p.productive_set);
  for (const auto& c : p.productive_set)
    if (p.reachable_set.count(c)) p.useful_set.insert(c);
  return p;
}

// --- closure constructions -----------------------------------------------

namespace detail {

/// Copies colors and rules of `src` into `dst`, suffixing every name.
inline void copy_suffixed(Grammar& dst, const Grammar& src, const std::string& suffix) {
  for (const auto& c : src.species.colors()) dst.add_nonterminal(c + suffix, src.type_of(c));
  for (const auto& x : src.species.nodes()) {
    Node y{x.name + suffix, {}, x.output + suffix};
    for (const auto& c : x.inputs) y.inputs.push_back(c + suffix);
    dst.species.add_node(y);
    dst.node_splices[y.name] = src.splice_of(x.name);
  }
}

}  // namespace detail

/// Grammar for L(g1) ∪ L(g2): suffixed copies plus a fresh start with two unary
/// identity-spliced injections "i1", "i2".
inline Grammar union_grammars(const Grammar& g1, const Grammar& g2) {
  if (!(g1.category == g2.category))
    throw Error(ErrorKind::type_mismatch, "union needs grammars over the same category");
  const GapType& t = g1.type_of(g1.start);
  if (t != g2.type_of(g2.start))
    throw Error(ErrorKind::type_mismatch, "start symbols refine different gap types " + to_string(t) + " and " +
                                              to_string(g2.type_of(g2.start)));
  Grammar g;
  g.category = g1.category;
  detail::copy_suffixed(g, g1, "#u1");
  detail::copy_suffixed(g, g2, "#u2");
  g.start = g1.start;
  g.add_nonterminal(g.start, t);
  g.species.add_node(Node{"i1", {g1.start + "#u1"}, g.start});
  g.node_splices["i1"] = spliced_identity(t);
  g.species.add_node(Node{"i2", {g2.start + "#u2"}, g.start});
  g.node_splices["i2"] = spliced_identity(t);
  return g;
}

/// Grammar for the spliced concatenation w0 L(G1) w1 ... L(Gn) wn.
inline Grammar spliced_concat(const SplicedArrow& op, const std::vector<Grammar>& gs, const FiniteGraph& category) {
  if (gs.size() != op.arity())
    throw Error(ErrorKind::type_mismatch, "operation of arity " + std::to_string(op.arity()) + " applied to " +
                                              std::to_string(gs.size()) + " grammars");
  auto problems = check_spliced(category, op);
  if (!problems.empty()) throw Error(ErrorKind::type_mismatch, "ill-typed operation: " + problems.front());
  Grammar g;
  g.category = category;
  Node x{"x#cat", {}, "S#cat"};
  for (std::size_t k = 0; k < gs.size(); ++k) {
    if (!(gs[k].category == category))
      throw Error(ErrorKind::type_mismatch, "grammar " + std::to_string(k) + " is over a different category");
    if (gs[k].type_of(gs[k].start) != op.gaps[k])
      throw Error(ErrorKind::type_mismatch, "grammar " + std::to_string(k) + " start refines " +
                                                to_string(gs[k].type_of(gs[k].start)) + ", gap expects " +
                                                to_string(op.gaps[k]));
    std::string suffix = "#cat" + std::to_string(k + 1);
    detail::copy_suffixed(g, gs[k], suffix);
    x.inputs.push_back(gs[k].start + suffix);
  }
  g.add_nonterminal("S#cat", op.outer);
  g.start = "S#cat";
  g.species.add_node(x);
  g.node_splices[x.name] = op;
  return g;
}

/// Postcomposes phi with W[F]; species and start are unchanged.
inline Grammar functorial_image(const Grammar& g, const FreeFunctor& F) {
  if (!(F.domain == g.category)) throw Error(ErrorKind::type_mismatch, "functor domain is not the grammar's category");
  Grammar h;
  h.category = F.codomain;
  h.species = g.species;
  h.start = g.start;
  for (const auto& [c, t] : g.color_types) h.color_types[c] = {F.map_object(t.left), F.map_object(t.right)};
  for (const auto& [x, f] : g.node_splices) h.node_splices[x] = apply_functor(F, f);
  return h;
}

// --- bilinear normal form -------------------------------------------------

inline std::string chain_color_name(const std::string& node, std::size_t i) {
  return "I(" + node + "," + std::to_string(i) + ")";
}
inline std::string chain_node_name(const std::string& node, std::size_t i) {
  return node + "[" + std::to_string(i) + "]";
}

/// Bilinear grammar together with the correspondence back to the source rules.
struct Bilinearization {
  Grammar grammar;
  // chain node name -> (original node, position in the chain)
  std::map<std::string, std::pair<std::string, std::size_t>> chain_nodes;
  std::set<std::string> chain_colors;
  std::set<std::string> original_colors;
};

/// Each node x : R_1..R_n -> R (n > 0) with image w0-...-wn becomes colors
/// I(x,0..n-1) with I(x,i-1) ⊏ (A, A_i), a nullary x[0] with image w0 and
/// binary x[i] : I(x,i-1), R_i -> I(x,i) with image id-id-w_i (I(x,n) = R).
inline Bilinearization bilinearize_with_map(const Grammar& g) {
  Bilinearization b;
  Grammar& h = b.grammar;
  h.category = g.category;
  h.start = g.start;
  for (const auto& c : g.species.colors()) {
    h.add_nonterminal(c, g.type_of(c));
    b.original_colors.insert(c);
  }
  for (const auto& x : g.species.nodes()) {
    const SplicedArrow& f = g.splice_of(x.name);
    if (x.arity() == 0) {
      h.species.add_node(x);
      h.node_splices[x.name] = f;
      continue;
    }
    const std::string& A = f.outer.left;
    const std::size_t n = x.arity();
    for (std::size_t i = 1; i <= n; ++i) {
      std::string cname = chain_color_name(x.name, i - 1);
      h.add_nonterminal(cname, GapType{A, f.gaps[i - 1].left});
      b.chain_colors.insert(cname);
    }
    std::string x0 = chain_node_name(x.name, 0);
    h.species.add_node(Node{x0, {}, chain_color_name(x.name, 0)});
    h.node_splices[x0] = spliced_constant(f.segments[0]);
    b.chain_nodes[x0] = {x.name, 0};
    for (std::size_t i = 1; i <= n; ++i) {
      std::string xi = chain_node_name(x.name, i);
      std::string out = i == n ? x.output : chain_color_name(x.name, i);
      GapType prev{A, f.gaps[i - 1].left};
      h.species.add_node(Node{xi, {chain_color_name(x.name, i - 1), x.inputs[i - 1]}, out});
      h.node_splices[xi] = SplicedArrow{h.type_of(out),
                                        {prev, f.gaps[i - 1]},
                                        {Path::identity(A), Path::identity(f.gaps[i - 1].left), f.segments[i]}};
      b.chain_nodes[xi] = {x.name, i};
    }
  }
  return b;
}

inline Grammar bilinearize(const Grammar& g) { return bilinearize_with_map(g).grammar; }

/// The fully faithful functor B on closed trees: x(t1..tn) ↦ x[n](...x[1](x[0], B t1)..., B tn).
inline DerivationTree to_bilinear_tree(const Grammar& g, const DerivationTree& t) {
  if (t.is_leaf) return t;
  const Node& x = g.species.node(t.label);
  if (x.arity() == 0) return t;
  DerivationTree acc = DerivationTree::apply(chain_node_name(x.name, 0));
  for (std::size_t i = 1; i <= x.arity(); ++i)
    acc = DerivationTree::apply(chain_node_name(x.name, i), {acc, to_bilinear_tree(g, t.children[i - 1])});
  return acc;
}

/// Inverse of to_bilinear_tree on trees rooted at original colors.
inline DerivationTree from_bilinear_tree(const Bilinearization& b, const DerivationTree& t) {
  if (t.is_leaf) return t;
  auto it = b.chain_nodes.find(t.label);
  if (it == b.chain_nodes.end()) return t;  // copied nullary node
  const auto& [orig, last] = it->second;
  if (last == 0) throw Error(ErrorKind::malformed, "tree is rooted at an intermediate chain color");
  std::vector<DerivationTree> children(last);
  const DerivationTree* cur = &t;
  for (std::size_t i = last; i >= 1; --i) {
    auto ci = b.chain_nodes.find(cur->label);
    if (ci == b.chain_nodes.end() || ci->second != std::make_pair(orig, i) || cur->children.size() != 2)
      throw Error(ErrorKind::malformed, "tree is not in the image of the bilinearization");
    children[i - 1] = from_bilinear_tree(b, cur->children[1]);
    cur = &cur->children[0];
  }
  if (cur->label != chain_node_name(orig, 0)) throw Error(ErrorKind::malformed, "broken bilinear chain");
  return DerivationTree::apply(orig, std::move(children));
}

}  // namespace arrowcfg
