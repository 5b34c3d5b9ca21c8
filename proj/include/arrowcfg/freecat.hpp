#pragma once

// Free categories on finite graphs: paths, free functors, and the ordinal-sum
// and end-marker constructions.

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrowcfg/error.hpp"

namespace arrowcfg {

/// Generating arrow of a free category.
struct Generator {
  std::string name;
  std::string src;
  std::string dst;

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// Finite directed multigraph; the generating data of a free category.
///
/// Object and generator names are unique and every generator's endpoints are
/// declared objects. Both invariants are checked on insertion.
class FiniteGraph {
 public:
  FiniteGraph() = default;

  FiniteGraph(std::vector<std::string> objects, std::vector<Generator> generators) {
    for (auto& o : objects) add_object(std::move(o));
    for (auto& g : generators) add_generator(std::move(g));
  }

  void add_object(std::string name) {
    if (object_index_.count(name))
      throw Error(ErrorKind::malformed, "duplicate object '" + name + "'");
    object_index_.emplace(name, objects_.size());
    objects_.push_back(std::move(name));
  }

  void add_generator(Generator g) {
    if (generator_index_.count(g.name))
      throw Error(ErrorKind::malformed, "duplicate generator '" + g.name + "'");
    if (!has_object(g.src) || !has_object(g.dst))
      throw Error(ErrorKind::malformed, "generator '" + g.name + "' has undeclared endpoint");
    generator_index_.emplace(g.name, generators_.size());
    generators_.push_back(std::move(g));
  }

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Generator>& generators() const { return generators_; }

  bool has_object(const std::string& name) const { return object_index_.count(name) != 0; }
  bool has_generator(const std::string& name) const { return generator_index_.count(name) != 0; }

  const Generator* find_generator(const std::string& name) const {
    auto it = generator_index_.find(name);
    return it == generator_index_.end() ? nullptr : &generators_[it->second];
  }

  const Generator& generator(const std::string& name) const {
    if (auto* g = find_generator(name)) return *g;
    throw Error(ErrorKind::unknown_symbol, "no generator named '" + name + "'");
  }

  /// Generators leaving `object`, sorted by name.
  std::vector<const Generator*> outgoing(const std::string& object) const {
    std::vector<const Generator*> out;
    for (const auto& g : generators_)
      if (g.src == object) out.push_back(&g);
    std::sort(out.begin(), out.end(),
              [](const Generator* a, const Generator* b) { return a->name < b->name; });
    return out;
  }

  /// Equality as presentations: same object set and same generator set.
  friend bool operator==(const FiniteGraph& a, const FiniteGraph& b) {
    if (a.objects_.size() != b.objects_.size() || a.generators_.size() != b.generators_.size())
      return false;
    for (const auto& o : a.objects_)
      if (!b.has_object(o)) return false;
    for (const auto& g : a.generators_) {
      auto* h = b.find_generator(g.name);
      if (!h || *h != g) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> objects_;
  std::vector<Generator> generators_;
  std::map<std::string, std::size_t> object_index_;
  std::map<std::string, std::size_t> generator_index_;
};

/// Arrow of a free category. Identities are empty generator sequences.
struct Path {
  std::string src;
  std::string dst;
  std::vector<std::string> gens;

  static Path identity(const std::string& object) { return Path{object, object, {}}; }

  std::size_t length() const { return gens.size(); }
  bool is_identity() const { return gens.empty(); }

  friend bool operator==(const Path&, const Path&) = default;

  /// Canonical order: length, then generator names lexicographically, then endpoints.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.gens.size() <=> b.gens.size(); c != 0) return c;
    if (auto c = a.gens <=> b.gens; c != 0) return c;
    if (auto c = a.src <=> b.src; c != 0) return c;
    return a.dst <=> b.dst;
  }
};

/// Checks that `p` is a well-formed arrow of the free category on `g`.
inline bool is_valid_path(const FiniteGraph& g, const Path& p) {
  if (!g.has_object(p.src) || !g.has_object(p.dst)) return false;
  std::string at = p.src;
  for (const auto& name : p.gens) {
    auto* gen = g.find_generator(name);
    if (!gen || gen->src != at) return false;
    at = gen->dst;
  }
  return at == p.dst;
}

/// Builds the path `src --gens--> ?`, checking composability.
inline Path make_path(const FiniteGraph& g, const std::string& src, std::vector<std::string> gens) {
  if (!g.has_object(src)) throw Error(ErrorKind::unknown_symbol, "no object named '" + src + "'");
  std::string at = src;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& gen = g.generator(gens[k]);
    if (gen.src != at)
      throw Error(ErrorKind::composition, "generator '" + gen.name + "' at position " +
                                              std::to_string(k) + " does not start at '" + at + "'");
    at = gen.dst;
  }
  return Path{src, at, std::move(gens)};
}

/// Builds a non-empty path; the source is read off the first generator.
inline Path make_path(const FiniteGraph& g, std::vector<std::string> gens) {
  if (gens.empty()) throw Error(ErrorKind::malformed, "empty path needs an explicit source object");
  std::string src = g.generator(gens.front()).src;
  return make_path(g, src, std::move(gens));
}

/// Objects visited by `p`: entry k is the object between generators k-1 and k.
inline std::vector<std::string> path_objects(const FiniteGraph& g, const Path& p) {
  std::vector<std::string> objs{p.src};
  objs.reserve(p.gens.size() + 1);
  for (const auto& name : p.gens) objs.push_back(g.generator(name).dst);
  return objs;
}

inline Path path_compose(const Path& p, const Path& q) {
  if (p.dst != q.src)
    throw Error(ErrorKind::composition,
                "cannot compose path ending at '" + p.dst + "' with path starting at '" + q.src + "'");
  Path r{p.src, q.dst, p.gens};
  r.gens.insert(r.gens.end(), q.gens.begin(), q.gens.end());
  return r;
}

/// Subpath between positions i and j (0 <= i <= j <= length).
inline Path subpath(const FiniteGraph& g, const Path& p, std::size_t i, std::size_t j) {
  if (i > j || j > p.length()) throw Error(ErrorKind::index, "subpath range out of bounds");
  auto objs = path_objects(g, p);
  return Path{objs[i], objs[j], std::vector<std::string>(p.gens.begin() + i, p.gens.begin() + j)};
}

/// Human-readable rendering: single-letter generators are juxtaposed, longer
/// names are space separated, identities print as "ε".
inline std::string format_path(const Path& p) {
  if (p.gens.empty()) return "ε";
  bool letters = std::all_of(p.gens.begin(), p.gens.end(),
                             [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t k = 0; k < p.gens.size(); ++k) {
    if (!letters && k) out += ' ';
    out += p.gens[k];
  }
  return out;
}

/// Functor between free categories, determined by its action on generators.
struct FreeFunctor {
  FiniteGraph domain;
  FiniteGraph codomain;
  std::map<std::string, std::string> object_map;
  std::map<std::string, Path> generator_map;

  /// Lists violations of the functor typing conditions; empty when valid.
  std::vector<std::string> check() const {
    std::vector<std::string> problems;
    for (const auto& o : domain.objects()) {
      auto it = object_map.find(o);
      if (it == object_map.end())
        problems.push_back("object '" + o + "' is not mapped");
      else if (!codomain.has_object(it->second))
        problems.push_back("object '" + o + "' maps to unknown object '" + it->second + "'");
    }
    for (const auto& g : domain.generators()) {
      auto it = generator_map.find(g.name);
      if (it == generator_map.end()) {
        problems.push_back("generator '" + g.name + "' is not mapped");
        continue;
      }
      const Path& img = it->second;
      if (!is_valid_path(codomain, img)) {
        problems.push_back("image of '" + g.name + "' is not a path of the codomain");
        continue;
      }
      auto src = object_map.find(g.src), dst = object_map.find(g.dst);
      if (src == object_map.end() || dst == object_map.end()) continue;
      if (img.src != src->second || img.dst != dst->second)
        problems.push_back("image of '" + g.name + "' has type " + img.src + "->" + img.dst +
                           ", expected " + src->second + "->" + dst->second);
    }
    return problems;
  }

  void validate() const {
    auto problems = check();
    if (!problems.empty()) throw Error(ErrorKind::type_mismatch, "invalid functor: " + problems.front());
  }

  std::string map_object(const std::string& o) const {
    auto it = object_map.find(o);
    if (it == object_map.end()) throw Error(ErrorKind::unknown_symbol, "functor does not map object '" + o + "'");
    return it->second;
  }
};

inline FreeFunctor identity_functor(const FiniteGraph& g) {
  FreeFunctor f{g, g, {}, {}};
  for (const auto& o : g.objects()) f.object_map[o] = o;
  for (const auto& gen : g.generators()) f.generator_map[gen.name] = Path{gen.src, gen.dst, {gen.name}};
  return f;
}

/// Homomorphic image of a path.
inline Path apply_functor(const FreeFunctor& f, const Path& p) {
  if (!is_valid_path(f.domain, p)) throw Error(ErrorKind::malformed, "path is not in the functor's domain");
  Path out = Path::identity(f.map_object(p.src));
  for (const auto& name : p.gens) {
    auto it = f.generator_map.find(name);
    if (it == f.generator_map.end())
      throw Error(ErrorKind::unknown_symbol, "functor does not map generator '" + name + "'");
    out = path_compose(out, it->second);
  }
  return out;
}

inline constexpr const char* kMonoidObject = "*";
inline constexpr const char* kTopObject = "top";
inline constexpr const char* kEndMarker = "$";

/// One-object graph M[Σ] with one loop per letter.
inline FiniteGraph monoid_graph(const std::vector<std::string>& alphabet,
                                const std::string& object = kMonoidObject) {
  FiniteGraph g;
  g.add_object(object);
  for (const auto& a : alphabet) g.add_generator({a, object, object});
  return g;
}

/// Graph with one object and no generators (the terminal category).
inline FiniteGraph terminal_graph(const std::string& object = kTopObject) {
  FiniteGraph g;
  g.add_object(object);
  return g;
}

/// Adjoins an object "top" and a generator "$" : * -> top to a one-object graph.
inline FiniteGraph end_marked(const FiniteGraph& sigma) {
  if (sigma.objects().size() != 1)
    throw Error(ErrorKind::malformed, "end_marked expects a one-object graph");
  FiniteGraph g = sigma;
  g.add_object(kTopObject);
  g.add_generator({kEndMarker, sigma.objects().front(), kTopObject});
  return g;
}

/// Name of the generator freely adjoined from `a` to `b` by ordinal_sum.
inline std::string ordinal_link_name(const std::string& a, const std::string& b) {
  return "e(" + a + "," + b + ")";
}

/// Ordinal sum: disjoint union plus one free generator A -> B for every object
/// A of `c` and B of `d`. On any name collision all names of `c` are prefixed
/// with "l." and all names of `d` with "r.".
inline FiniteGraph ordinal_sum(const FiniteGraph& c, const FiniteGraph& d) {
  bool clash = false;
  for (const auto& o : c.objects()) clash = clash || d.has_object(o);
  for (const auto& g : c.generators()) clash = clash || d.has_generator(g.name);
  const std::string lp = clash ? "l." : "", rp = clash ? "r." : "";

  FiniteGraph out;
  for (const auto& o : c.objects()) out.add_object(lp + o);
  for (const auto& o : d.objects()) out.add_object(rp + o);
  for (const auto& g : c.generators()) out.add_generator({lp + g.name, lp + g.src, lp + g.dst});
  for (const auto& g : d.generators()) out.add_generator({rp + g.name, rp + g.src, rp + g.dst});
  for (const auto& a : c.objects())
    for (const auto& b : d.objects()) {
      std::string name = ordinal_link_name(lp + a, rp + b);
      while (out.has_generator(name)) name += "'";
      out.add_generator({name, lp + a, rp + b});
    }
  return out;
}

/// All paths src -> dst with at most `max_len` generators, in canonical order.
inline std::vector<Path> enumerate_paths(const FiniteGraph& g, const std::string& src,
                                         const std::string& dst, std::size_t max_len) {
  std::vector<Path> found;
  if (!g.has_object(src) || !g.has_object(dst)) return found;
  // Extending a lexicographically sorted level by name-sorted generators keeps
  // the next level sorted.
  std::vector<Path> level{Path::identity(src)};
  for (std::size_t len = 0;; ++len) {
    for (const auto& p : level)
      if (p.dst == dst) found.push_back(p);
    if (len == max_len) break;
    std::vector<Path> next;
    for (const auto& p : level)
      for (const Generator* gen : g.outgoing(p.dst)) {
        Path q = p;
        q.gens.push_back(gen->name);
        q.dst = gen->dst;
        next.push_back(std::move(q));
      }
    if (next.empty()) break;
    level = std::move(next);
  }
  return found;
}

}  // namespace arrowcfg
