#pragma once

// Colored non-symmetric species, maps of species, and derivation trees
// (operations of the free operad on a species).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrowcfg/error.hpp"

namespace arrowcfg {

struct Node {
  std::string name;
  std::vector<std::string> inputs;
  std::string output;

  std::size_t arity() const { return inputs.size(); }

  friend bool operator==(const Node&, const Node&) = default;
};

class Species {
 public:
  Species() = default;

  Species(std::vector<std::string> colors, std::vector<Node> nodes) {
    for (auto& c : colors) add_color(std::move(c));
    for (auto& n : nodes) add_node(std::move(n));
  }

  void add_color(std::string name) {
    if (color_set_.count(name)) throw Error(ErrorKind::malformed, "duplicate color '" + name + "'");
    color_set_.insert(name);
    colors_.push_back(std::move(name));
  }

  void add_node(Node n) {
    if (node_index_.count(n.name)) throw Error(ErrorKind::malformed, "duplicate node '" + n.name + "'");
    if (!has_color(n.output))
      throw Error(ErrorKind::malformed, "node '" + n.name + "' has undeclared output color '" + n.output + "'");
    for (const auto& c : n.inputs)
      if (!has_color(c))
        throw Error(ErrorKind::malformed, "node '" + n.name + "' has undeclared input color '" + c + "'");
    node_index_.emplace(n.name, nodes_.size());
    nodes_.push_back(std::move(n));
  }

  const std::vector<std::string>& colors() const { return colors_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  bool has_color(const std::string& c) const { return color_set_.count(c) != 0; }
  bool has_node(const std::string& n) const { return node_index_.count(n) != 0; }

  const Node* find_node(const std::string& name) const {
    auto it = node_index_.find(name);
    return it == node_index_.end() ? nullptr : &nodes_[it->second];
  }

  const Node& node(const std::string& name) const {
    if (auto* n = find_node(name)) return *n;
    throw Error(ErrorKind::unknown_symbol, "no node named '" + name + "'");
  }

  /// Nodes with the given output color, in declaration order.
  std::vector<const Node*> nodes_into(const std::string& color) const {
    std::vector<const Node*> out;
    for (const auto& n : nodes_)
      if (n.output == color) out.push_back(&n);
    return out;
  }

 private:
  std::vector<std::string> colors_;
  std::set<std::string> color_set_;
  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> node_index_;
};

/// Map of species: a color function and a node function making the typing square commute.
struct SpeciesMap {
  Species domain;
  Species codomain;
  std::map<std::string, std::string> color_map;
  std::map<std::string, std::string> node_map;
};

struct SpeciesMapViolation {
  std::string node;
  std::string expected;  // typing required by the square
  std::string actual;    // typing of the image node
};

namespace detail {
inline std::string typing(const std::vector<std::string>& inputs, const std::string& output) {
  std::string s = "(";
  for (std::size_t k = 0; k < inputs.size(); ++k) s += (k ? "," : "") + inputs[k];
  return s + ")->" + output;
}
}  // namespace detail

/// Checks the commuting-square condition for every node; returns the offending nodes.
inline std::vector<SpeciesMapViolation> validate_species_map(const SpeciesMap& phi) {
  std::vector<SpeciesMapViolation> report;
  auto map_color = [&](const std::string& c) -> std::optional<std::string> {
    auto it = phi.color_map.find(c);
    if (it == phi.color_map.end()) return std::nullopt;
    return it->second;
  };
  for (const auto& c : phi.domain.colors()) {
    auto m = map_color(c);
    if (!m || !phi.codomain.has_color(*m))
      report.push_back({"", "color " + c + " mapped into codomain", m ? *m : "<unmapped>"});
  }
  for (const auto& x : phi.domain.nodes()) {
    auto it = phi.node_map.find(x.name);
    const Node* y = it == phi.node_map.end() ? nullptr : phi.codomain.find_node(it->second);
    std::vector<std::string> ins;
    for (const auto& c : x.inputs) ins.push_back(map_color(c).value_or("?"));
    std::string expected = detail::typing(ins, map_color(x.output).value_or("?"));
    if (!y) {
      report.push_back({x.name, expected, "<unmapped>"});
      continue;
    }
    std::string actual = detail::typing(y->inputs, y->output);
    if (expected != actual) report.push_back({x.name, expected, actual});
  }
  return report;
}

inline SpeciesMap identity_species_map(const Species& s) {
  SpeciesMap m{s, s, {}, {}};
  for (const auto& c : s.colors()) m.color_map[c] = c;
  for (const auto& n : s.nodes()) m.node_map[n.name] = n.name;
  return m;
}

/// Operation of the free operad: a planar tree whose internal nodes are
/// species nodes and whose free leaves carry explicit colors.
struct DerivationTree {
  bool is_leaf = false;
  std::string label;  // leaf color, or node name
  std::vector<DerivationTree> children;

  static DerivationTree leaf(std::string color) { return DerivationTree{true, std::move(color), {}}; }
  static DerivationTree apply(std::string node, std::vector<DerivationTree> children = {}) {
    return DerivationTree{false, std::move(node), std::move(children)};
  }

  friend bool operator==(const DerivationTree&, const DerivationTree&) = default;
};

inline std::size_t node_count(const DerivationTree& t) {
  if (t.is_leaf) return 0;
  std::size_t n = 1;
  for (const auto& c : t.children) n += node_count(c);
  return n;
}

inline std::size_t leaf_count(const DerivationTree& t) {
  if (t.is_leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : t.children) n += leaf_count(c);
  return n;
}

inline bool is_closed(const DerivationTree& t) { return leaf_count(t) == 0; }

/// Free leaves, left to right, as colors.
inline std::vector<std::string> leaf_colors(const DerivationTree& t) {
  std::vector<std::string> out;
  std::function<void(const DerivationTree&)> go = [&](const DerivationTree& u) {
    if (u.is_leaf) {
      out.push_back(u.label);
      return;
    }
    for (const auto& c : u.children) go(c);
  };
  go(t);
  return out;
}

/// Preorder sequence of labels; leaves are rendered as "#color".
inline std::vector<std::string> preorder(const DerivationTree& t) {
  std::vector<std::string> out;
  std::function<void(const DerivationTree&)> go = [&](const DerivationTree& u) {
    out.push_back(u.is_leaf ? "#" + u.label : u.label);
    for (const auto& c : u.children) go(c);
  };
  go(t);
  return out;
}

/// Canonical tree order: node count, then preorder labels lexicographically.
inline bool canonical_less(const DerivationTree& a, const DerivationTree& b) {
  auto na = node_count(a), nb = node_count(b);
  if (na != nb) return na < nb;
  return preorder(a) < preorder(b);
}

/// Output color of `t` over `s`; checks the typing of every node.
inline std::string root_color(const Species& s, const DerivationTree& t) {
  if (t.is_leaf) {
    if (!s.has_color(t.label)) throw Error(ErrorKind::unknown_symbol, "unknown color '" + t.label + "'");
    return t.label;
  }
  const Node& x = s.node(t.label);
  if (t.children.size() != x.arity())
    throw Error(ErrorKind::type_mismatch, "node '" + x.name + "' expects " + std::to_string(x.arity()) +
                                              " children, got " + std::to_string(t.children.size()));
  for (std::size_t k = 0; k < x.arity(); ++k) {
    auto c = root_color(s, t.children[k]);
    if (c != x.inputs[k])
      throw Error(ErrorKind::type_mismatch, "child " + std::to_string(k) + " of '" + x.name + "' has color " +
                                                c + ", expected " + x.inputs[k]);
  }
  return x.output;
}

/// Partial composition t ∘_i s: replaces the i-th free leaf of `t` by `s`.
/// The color check needs the root color of `s`, supplied by the caller.
inline DerivationTree tree_substitute(const Species& sp, const DerivationTree& t, std::size_t i,
                                      const DerivationTree& s) {
  auto leaves = leaf_colors(t);
  if (i >= leaves.size())
    throw Error(ErrorKind::index, "leaf index " + std::to_string(i) + " out of range (" +
                                      std::to_string(leaves.size()) + " leaves)");
  auto sc = root_color(sp, s);
  if (sc != leaves[i])
    throw Error(ErrorKind::type_mismatch, "leaf " + std::to_string(i) + " has color " + leaves[i] +
                                              " but substituted tree has root color " + sc);
  std::size_t seen = 0;
  std::function<DerivationTree(const DerivationTree&)> go = [&](const DerivationTree& u) -> DerivationTree {
    if (u.is_leaf) return seen++ == i ? s : u;
    DerivationTree v = DerivationTree::apply(u.label);
    v.children.reserve(u.children.size());
    for (const auto& c : u.children) v.children.push_back(go(c));
    return v;
  };
  return go(t);
}

/// All closed trees of root `color` with at most `max_nodes` nodes, in canonical order.
inline std::vector<DerivationTree> enumerate_closed_trees(const Species& s, const std::string& color,
                                                          std::size_t max_nodes) {
  // exact[(c, k)] = closed trees of color c with exactly k nodes
  std::map<std::pair<std::string, std::size_t>, std::vector<DerivationTree>> exact;
  std::function<const std::vector<DerivationTree>&(const std::string&, std::size_t)> trees;
  trees = [&](const std::string& c, std::size_t k) -> const std::vector<DerivationTree>& {
    auto key = std::make_pair(c, k);
    if (auto it = exact.find(key); it != exact.end()) return it->second;
    std::vector<DerivationTree> out;
    if (k >= 1) {
      for (const Node* x : s.nodes_into(c)) {
        // distribute k-1 nodes over the children, each child getting at least one
        std::vector<DerivationTree> partial;
        std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t pos, std::size_t left) {
          if (pos == x->arity()) {
            if (left == 0) out.push_back(DerivationTree::apply(x->name, partial));
            return;
          }
          std::size_t rest = x->arity() - pos - 1;
          for (std::size_t m = 1; m + rest <= left; ++m)
            for (const auto& child : trees(x->inputs[pos], m)) {
              partial.push_back(child);
              fill(pos + 1, left - m);
              partial.pop_back();
            }
        };
        fill(0, k - 1);
      }
      std::sort(out.begin(), out.end(),
                [](const DerivationTree& a, const DerivationTree& b) { return preorder(a) < preorder(b); });
    }
    return exact.emplace(key, std::move(out)).first->second;
  };
  std::vector<DerivationTree> all;
  if (!s.has_color(color)) return all;
  for (std::size_t k = 1; k <= max_nodes; ++k) {
    const auto& level = trees(color, k);
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

}  // namespace arrowcfg
