#pragma once

// Operad laws for spliced arrows, checked two ways:
//  * symbolically: each segment of f, g, h is a distinct letter of a free
//    monoid, so one check per shape (arities, gap indices) covers every
//    instance, since any assignment of words to the letters is a functor and
//    W[-] of a functor preserves composition;
//  * concretely: seeded random triples over M[{a,b}] with segments of length <= 2.

#include <random>
#include <string>
#include <vector>

#include "arrowcfg/arrowcfg.hpp"

namespace laws {

using namespace arrowcfg;

struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ == 0) first_failure = what;
  }
};

inline SplicedArrow star_arrow(std::vector<Path> segments) {
  SplicedArrow f;
  f.outer = {"*", "*"};
  f.gaps.assign(segments.size() - 1, GapType{"*", "*"});
  f.segments = std::move(segments);
  return f;
}

inline SplicedArrow symbolic(const std::string& name, std::size_t arity) {
  std::vector<Path> segs;
  for (std::size_t k = 0; k <= arity; ++k) segs.push_back(Path{"*", "*", {name + std::to_string(k)}});
  return star_arrow(std::move(segs));
}

/// Associativity (nested and sequential), units, and parallel = iterated partial
/// for one triple of arrows.
inline void check_triple(Tally& t, const SplicedArrow& f, const SplicedArrow& g, const SplicedArrow& h,
                         const std::string& tag) {
  const std::size_t nf = f.arity(), ng = g.arity(), nh = h.arity();
  const GapType star{"*", "*"};
  for (std::size_t i = 0; i < nf; ++i) {
    SplicedArrow fg = spliced_compose_partial(f, i, g);
    for (std::size_t j = 0; j < fg.arity(); ++j) {
      SplicedArrow lhs = spliced_compose_partial(fg, j, h);
      SplicedArrow rhs;
      if (j < i)
        rhs = spliced_compose_partial(spliced_compose_partial(f, j, h), i + nh - 1, g);
      else if (j < i + ng)
        rhs = spliced_compose_partial(f, i, spliced_compose_partial(g, j - i, h));
      else
        rhs = spliced_compose_partial(spliced_compose_partial(f, j - ng + 1, h), i, g);
      t.expect(lhs == rhs, tag + " associativity i=" + std::to_string(i) + " j=" + std::to_string(j));
    }
    t.expect(spliced_compose_partial(f, i, spliced_identity(star)) == f, tag + " right unit");
  }
  t.expect(spliced_compose_partial(spliced_identity(star), 0, f) == f, tag + " left unit");
  std::vector<SplicedArrow> ops;
  for (std::size_t k = 0; k < nf; ++k) ops.push_back(k % 2 ? g : h);
  SplicedArrow iter = f;
  for (std::size_t k = nf; k-- > 0;) iter = spliced_compose_partial(iter, k, ops[k]);
  t.expect(spliced_compose_parallel(f, ops) == iter, tag + " parallel vs partial");
  std::vector<SplicedArrow> ids(nf, spliced_identity(star));
  t.expect(spliced_compose_parallel(f, ids) == f, tag + " parallel unit");
}

inline Tally symbolic_laws(std::size_t max_arity = 3) {
  Tally t;
  for (std::size_t nf = 0; nf <= max_arity; ++nf)
    for (std::size_t ng = 0; ng <= max_arity; ++ng)
      for (std::size_t nh = 0; nh <= max_arity; ++nh)
        check_triple(t, symbolic("f", nf), symbolic("g", ng), symbolic("h", nh),
                     "shape " + std::to_string(nf) + std::to_string(ng) + std::to_string(nh));
  return t;
}

/// Every word over {a,b} with at most 2 letters.
inline std::vector<Path> short_words() { return enumerate_paths(monoid_graph({"a", "b"}), "*", "*", 2); }

inline Tally concrete_laws(std::size_t samples, std::uint32_t seed, std::size_t max_arity = 3) {
  Tally t;
  auto words = short_words();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1), arity(0, max_arity);
  auto random_arrow = [&]() {
    std::vector<Path> segs;
    for (std::size_t k = 0, n = arity(rng); k <= n; ++k) segs.push_back(words[pick(rng)]);
    return star_arrow(std::move(segs));
  };
  for (std::size_t s = 0; s < samples; ++s) check_triple(t, random_arrow(), random_arrow(), random_arrow(), "sample");
  return t;
}

/// W[F] preserves partial composition for a letter-substitution functor.
inline Tally functor_preserves(std::uint32_t seed, std::size_t samples) {
  Tally t;
  std::vector<std::string> letters;
  for (auto n : {"f", "g"})
    for (int k = 0; k <= 3; ++k) letters.push_back(n + std::to_string(k));
  FiniteGraph sym = monoid_graph(letters);
  FiniteGraph ab = monoid_graph({"a", "b"});
  auto words = short_words();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    FreeFunctor F{sym, ab, {{"*", "*"}}, {}};
    for (const auto& l : letters) F.generator_map[l] = words[pick(rng)];
    for (std::size_t nf = 1; nf <= 3; ++nf)
      for (std::size_t ng = 0; ng <= 3; ++ng) {
        auto f = symbolic("f", nf), g = symbolic("g", ng);
        for (std::size_t i = 0; i < nf; ++i)
          t.expect(apply_functor(F, spliced_compose_partial(f, i, g)) ==
                       spliced_compose_partial(apply_functor(F, f), i, apply_functor(F, g)),
                   "functoriality");
      }
  }
  return t;
}

}  // namespace laws
