#pragma once

// Generalized CYK over free categories. Items are spans (R, i, j) over the
// positions of the target path; every factorization of an arrow of a free
// category is a position split, so the parse matrix N_{i,j} covers arbitrary
// targets, not just words in a monoid.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrowcfg/error.hpp"
#include "arrowcfg/freecat.hpp"
#include "arrowcfg/grammar.hpp"
#include "arrowcfg/species.hpp"

namespace arrowcfg {

enum class AgendaOrder { fifo, lifo };
enum class Strategy { bilinear, direct };

struct ParseOptions {
  Strategy strategy = Strategy::bilinear;
  AgendaOrder order = AgendaOrder::fifo;
};

struct ParseItem {
  std::string color;
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==(const ParseItem&, const ParseItem&) = default;
  friend auto operator<=>(const ParseItem&, const ParseItem&) = default;
};

struct ForestAlternative {
  std::string node;
  std::vector<std::size_t> children;  // indices into PackedForest::items

  friend bool operator==(const ForestAlternative&, const ForestAlternative&) = default;
  friend auto operator<=>(const ForestAlternative&, const ForestAlternative&) = default;
};

/// Shared packed parse forest, restricted to items reachable from the root.
/// Items are sorted; alternatives of each item are sorted.
struct PackedForest {
  Path word;
  std::vector<ParseItem> items;
  std::vector<std::vector<ForestAlternative>> alternatives;
  std::optional<std::size_t> root;

  bool empty() const { return !root.has_value(); }

  friend bool operator==(const PackedForest&, const PackedForest&) = default;
};

namespace detail {

class CykEngine {
 public:
  struct Alt {
    std::size_t node;
    std::vector<std::size_t> kids;
    friend auto operator<=>(const Alt&, const Alt&) = default;
  };
  struct Item {
    std::size_t color;
    std::size_t i, j;
    friend auto operator<=>(const Item&, const Item&) = default;
  };

  CykEngine(const Grammar& g, const Path& w, AgendaOrder order) : g_(g), w_(w), order_(order) {
    if (!is_valid_path(g.category, w))
      throw Error(ErrorKind::malformed, "word is not a path of the grammar's category");
    objs_ = path_objects(g.category, w);
    n_ = w.length();
    for (const auto& c : g.species.colors()) {
      color_id_.emplace(c, colors_.size());
      colors_.push_back(c);
    }
    for (const auto& x : g.species.nodes()) {
      NodeInfo info{&x, &g.splice_of(x.name), {}};
      for (const auto& c : x.inputs) info.inputs.push_back(color_id_.at(c));
      nodes_.push_back(std::move(info));
    }
    uses_.resize(colors_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k)
      for (std::size_t p = 0; p < nodes_[k].inputs.size(); ++p) uses_[nodes_[k].inputs[p]].push_back({k, p});
    run();
  }

  const std::vector<Item>& items() const { return items_; }
  const std::vector<std::set<Alt>>& alternatives() const { return alts_; }
  const std::string& color_name(std::size_t c) const { return colors_[c]; }
  const Node& node(std::size_t k) const { return *nodes_[k].node; }
  std::size_t length() const { return n_; }

  std::optional<std::size_t> find(const std::string& color, std::size_t i, std::size_t j) const {
    auto c = color_id_.find(color);
    if (c == color_id_.end()) return std::nullopt;
    auto it = index_.find(Item{c->second, i, j});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  struct NodeInfo {
    const Node* node;
    const SplicedArrow* splice;
    std::vector<std::size_t> inputs;
  };

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// End position when segment s matches w at position p, else npos.
  std::size_t match(const Path& s, std::size_t p) const {
    if (p + s.length() > n_ || objs_[p] != s.src) return npos;
    for (std::size_t k = 0; k < s.length(); ++k)
      if (w_.gens[p + k] != s.gens[k]) return npos;
    return p + s.length();
  }

  /// Start position when segment s matches w ending at position q, else npos.
  std::size_t match_back(const Path& s, std::size_t q) const {
    if (s.length() > q) return npos;
    std::size_t p = q - s.length();
    return match(s, p) == q ? p : npos;
  }

  void add(const Item& it, Alt alt) {
    auto [pos, fresh] = index_.emplace(it, items_.size());
    if (fresh) {
      items_.push_back(it);
      alts_.emplace_back();
      agenda_.push_back(pos->second);
    }
    alts_[pos->second].insert(std::move(alt));
  }

  void run() {
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      if (!nodes_[k].inputs.empty()) continue;
      const Path& s = nodes_[k].splice->segments[0];
      for (std::size_t p = 0; p <= n_; ++p)
        if (std::size_t e = match(s, p); e != npos) add({color_id_.at(nodes_[k].node->output), p, e}, {k, {}});
    }
    while (!agenda_.empty()) {
      std::size_t id;
      if (order_ == AgendaOrder::fifo) {
        id = agenda_.front();
        agenda_.pop_front();
      } else {
        id = agenda_.back();
        agenda_.pop_back();
      }
      const Item it = items_[id];
      by_start_[{it.color, it.i}].push_back(id);
      by_end_[{it.color, it.j}].push_back(id);
      for (auto [k, p] : uses_[it.color]) combine(k, p, id);
    }
  }

  /// Every way of completing node k around chart item `id` placed at input p.
  void combine(std::size_t k, std::size_t p, std::size_t id) {
    const NodeInfo& info = nodes_[k];
    const auto& segs = info.splice->segments;
    const std::size_t arity = info.inputs.size();
    const Item it = items_[id];

    // left parts: (start position, children before p in reverse order)
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> lefts;
    std::vector<std::size_t> acc;
    std::function<void(std::size_t, std::size_t)> left = [&](std::size_t child, std::size_t q) {
      // segment `child` must end at q; child index `child`-1 ends where it starts
      std::size_t s = match_back(segs[child], q);
      if (s == npos) return;
      if (child == 0) {
        lefts.push_back({s, acc});
        return;
      }
      auto found = by_end_.find({info.inputs[child - 1], s});
      if (found == by_end_.end()) return;
      for (std::size_t other : found->second) {
        acc.push_back(other);
        left(child - 1, items_[other].i);
        acc.pop_back();
      }
    };
    left(p, it.i);
    if (lefts.empty()) return;

    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> rights;
    acc.clear();
    std::function<void(std::size_t, std::size_t)> right = [&](std::size_t child, std::size_t q) {
      std::size_t e = match(segs[child], q);
      if (e == npos) return;
      if (child == arity) {
        rights.push_back({e, acc});
        return;
      }
      auto found = by_start_.find({info.inputs[child], e});
      if (found == by_start_.end()) return;
      for (std::size_t other : found->second) {
        acc.push_back(other);
        right(child + 1, items_[other].j);
        acc.pop_back();
      }
    };
    right(p + 1, it.j);

    const std::size_t out = color_id_.at(info.node->output);
    for (const auto& [i, lk] : lefts)
      for (const auto& [j, rk] : rights) {
        Alt a{k, {}};
        a.kids.assign(lk.rbegin(), lk.rend());
        a.kids.push_back(id);
        a.kids.insert(a.kids.end(), rk.begin(), rk.end());
        add({out, i, j}, std::move(a));
      }
  }

  const Grammar& g_;
  const Path& w_;
  AgendaOrder order_;
  std::vector<std::string> objs_;
  std::size_t n_ = 0;
  std::vector<std::string> colors_;
  std::map<std::string, std::size_t> color_id_;
  std::vector<NodeInfo> nodes_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> uses_;  // color -> (node, input position)
  std::map<Item, std::size_t> index_;
  std::vector<Item> items_;
  std::vector<std::set<Alt>> alts_;
  std::deque<std::size_t> agenda_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_start_, by_end_;
};

/// Alternatives per engine item, expressed as (node name, child engine items).
using RawAlternatives = std::map<std::size_t, std::set<std::pair<std::string, std::vector<std::size_t>>>>;

inline PackedForest assemble_forest(const CykEngine& e, const Path& w, std::optional<std::size_t> root,
                                    const RawAlternatives& alts) {
  PackedForest f;
  f.word = w;
  if (!root) return f;
  std::set<std::size_t> seen{*root};
  std::vector<std::size_t> stack{*root};
  while (!stack.empty()) {
    std::size_t id = stack.back();
    stack.pop_back();
    auto it = alts.find(id);
    if (it == alts.end()) continue;
    for (const auto& [node, kids] : it->second)
      for (std::size_t k : kids)
        if (seen.insert(k).second) stack.push_back(k);
  }
  std::vector<std::pair<ParseItem, std::size_t>> order;
  for (std::size_t id : seen) {
    const auto& it = e.items()[id];
    order.push_back({ParseItem{e.color_name(it.color), it.i, it.j}, id});
  }
  std::sort(order.begin(), order.end());
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t k = 0; k < order.size(); ++k) {
    renumber[order[k].second] = k;
    f.items.push_back(order[k].first);
  }
  f.alternatives.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto it = alts.find(order[k].second);
    if (it == alts.end()) continue;
    for (const auto& [node, kids] : it->second) {
      ForestAlternative a{node, {}};
      for (std::size_t c : kids) a.children.push_back(renumber.at(c));
      f.alternatives[k].push_back(std::move(a));
    }
    std::sort(f.alternatives[k].begin(), f.alternatives[k].end());
  }
  f.root = renumber.at(*root);
  return f;
}

inline RawAlternatives direct_alternatives(const CykEngine& e) {
  RawAlternatives out;
  for (std::size_t id = 0; id < e.items().size(); ++id)
    for (const auto& a : e.alternatives()[id]) out[id].insert({e.node(a.node).name, a.kids});
  return out;
}

/// Folds chains x[0], x[1], ..., x[n] of a bilinearized parse back into
/// alternatives (x, children) over the original grammar.
inline RawAlternatives unchain_alternatives(const CykEngine& e, const Bilinearization& b) {
  RawAlternatives out;
  // child sequences contributed by chain item `id` at chain level `level`
  std::function<std::vector<std::vector<std::size_t>>(std::size_t, std::size_t)> expand =
      [&](std::size_t id, std::size_t level) {
        std::vector<std::vector<std::size_t>> res;
        for (const auto& a : e.alternatives()[id]) {
          const auto& [orig, pos] = b.chain_nodes.at(e.node(a.node).name);
          (void)orig;
          if (pos != level) continue;
          if (level == 0) {
            res.emplace_back();
            continue;
          }
          for (auto prefix : expand(a.kids[0], level - 1)) {
            prefix.push_back(a.kids[1]);
            res.push_back(std::move(prefix));
          }
        }
        return res;
      };
  for (std::size_t id = 0; id < e.items().size(); ++id) {
    if (!b.original_colors.count(e.color_name(e.items()[id].color))) continue;
    for (const auto& a : e.alternatives()[id]) {
      const std::string& name = e.node(a.node).name;
      auto chain = b.chain_nodes.find(name);
      if (chain == b.chain_nodes.end()) {
        out[id].insert({name, a.kids});
        continue;
      }
      const auto& [orig, last] = chain->second;
      for (auto kids : expand(a.kids[0], last - 1)) {
        kids.push_back(a.kids[1]);
        out[id].insert({orig, std::move(kids)});
      }
    }
  }
  return out;
}

}  // namespace detail

/// Every derivable item (R, i, j) of `g` over `w`, as computed by the agenda
/// fixed point on `g` itself. Independent of the agenda order.
inline std::set<ParseItem> derive_items(const Grammar& g, const Path& w, AgendaOrder order = AgendaOrder::fifo) {
  detail::CykEngine e(g, w, order);
  std::set<ParseItem> out;
  for (const auto& it : e.items()) out.insert({e.color_name(it.color), it.i, it.j});
  return out;
}

/// Colors deriving w over its full span.
inline std::set<std::string> recognize(const Grammar& g, const Path& w, const ParseOptions& opt = {}) {
  std::set<std::string> out;
  if (opt.strategy == Strategy::direct) {
    detail::CykEngine e(g, w, opt.order);
    for (const auto& it : e.items())
      if (it.i == 0 && it.j == w.length()) out.insert(e.color_name(it.color));
    return out;
  }
  Bilinearization b = bilinearize_with_map(g);
  detail::CykEngine e(b.grammar, w, opt.order);
  for (const auto& it : e.items())
    if (it.i == 0 && it.j == w.length() && b.original_colors.count(e.color_name(it.color)))
      out.insert(e.color_name(it.color));
  return out;
}

inline bool member(const Grammar& g, const Path& w, const ParseOptions& opt = {}) {
  const GapType& t = g.type_of(g.start);
  if (t.left != w.src || t.right != w.dst) return false;
  return recognize(g, w, opt).count(g.start) > 0;
}

/// Forest of all closed start-rooted derivations of w.
inline PackedForest parse_forest(const Grammar& g, const Path& w, const ParseOptions& opt = {}) {
  if (opt.strategy == Strategy::direct) {
    detail::CykEngine e(g, w, opt.order);
    return detail::assemble_forest(e, w, e.find(g.start, 0, w.length()), detail::direct_alternatives(e));
  }
  Bilinearization b = bilinearize_with_map(g);
  detail::CykEngine e(b.grammar, w, opt.order);
  return detail::assemble_forest(e, w, e.find(g.start, 0, w.length()), detail::unchain_alternatives(e, b));
}

struct ParseCount {
  bool infinite = false;
  std::uint64_t count = 0;  // saturates at the maximum value

  friend bool operator==(const ParseCount&, const ParseCount&) = default;
};

/// Whether some item reaches itself (an epsilon/unit cycle reachable from the root).
inline bool forest_has_cycle(const PackedForest& f) {
  if (f.empty()) return false;
  std::vector<int> mark(f.items.size(), 0);  // 0 new, 1 on stack, 2 done
  std::function<bool(std::size_t)> visit = [&](std::size_t v) {
    mark[v] = 1;
    for (const auto& a : f.alternatives[v])
      for (std::size_t c : a.children) {
        if (mark[c] == 1) return true;
        if (mark[c] == 0 && visit(c)) return true;
      }
    mark[v] = 2;
    return false;
  };
  return visit(*f.root);
}

inline ParseCount count_parses(const PackedForest& f) {
  if (f.empty()) return {};
  if (forest_has_cycle(f)) return {true, 0};
  constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  auto mul = [](std::uint64_t a, std::uint64_t b) { return a != 0 && b > cap / a ? cap : a * b; };
  auto add = [](std::uint64_t a, std::uint64_t b) { return b > cap - a ? cap : a + b; };
  std::vector<std::optional<std::uint64_t>> memo(f.items.size());
  std::function<std::uint64_t(std::size_t)> count = [&](std::size_t v) -> std::uint64_t {
    if (memo[v]) return *memo[v];
    std::uint64_t total = 0;
    for (const auto& a : f.alternatives[v]) {
      std::uint64_t prod = 1;
      for (std::size_t c : a.children) prod = mul(prod, count(c));
      total = add(total, prod);
    }
    memo[v] = total;
    return total;
  };
  return {false, count(*f.root)};
}

struct ParseEnumeration {
  std::vector<DerivationTree> trees;
  bool infinite = false;
};

/// The first `limit` trees of the forest in canonical order (node count, then
/// preorder). Exact whenever the forest has at most `limit` trees.
inline ParseEnumeration enumerate_parses(const PackedForest& f, std::size_t limit) {
  ParseEnumeration out;
  if (f.empty()) return out;
  out.infinite = forest_has_cycle(f);
  if (limit == 0) return out;

  std::size_t max_size = std::numeric_limits<std::size_t>::max();
  if (!out.infinite) {
    std::vector<std::optional<std::size_t>> memo(f.items.size());
    std::function<std::size_t(std::size_t)> deepest = [&](std::size_t v) -> std::size_t {
      if (memo[v]) return *memo[v];
      std::size_t best = 0;
      for (const auto& a : f.alternatives[v]) {
        std::size_t s = 1;
        for (std::size_t c : a.children) s += deepest(c);
        best = std::max(best, s);
      }
      memo[v] = best;
      return best;
    };
    max_size = deepest(*f.root);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<DerivationTree>> memo;
  std::function<const std::vector<DerivationTree>&(std::size_t, std::size_t)> trees =
      [&](std::size_t v, std::size_t size) -> const std::vector<DerivationTree>& {
    auto key = std::make_pair(v, size);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<DerivationTree> res;
    for (const auto& a : f.alternatives[v]) {
      std::vector<DerivationTree> kids;
      std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t pos, std::size_t left) {
        if (pos == a.children.size()) {
          if (left == 0) res.push_back(DerivationTree::apply(a.node, kids));
          return;
        }
        std::size_t rest = a.children.size() - pos - 1;
        for (std::size_t m = 1; m + rest <= left; ++m)
          for (const auto& t : trees(a.children[pos], m)) {
            kids.push_back(t);
            fill(pos + 1, left - m);
            kids.pop_back();
          }
      };
      if (size >= 1) fill(0, size - 1);
    }
    std::sort(res.begin(), res.end(),
              [](const DerivationTree& x, const DerivationTree& y) { return preorder(x) < preorder(y); });
    return memo.emplace(key, std::move(res)).first->second;
  };

  for (std::size_t size = 1; size <= max_size && out.trees.size() < limit; ++size)
    for (const auto& t : trees(*f.root, size)) {
      if (out.trees.size() == limit) break;
      out.trees.push_back(t);
    }
  return out;
}

}  // namespace arrowcfg
