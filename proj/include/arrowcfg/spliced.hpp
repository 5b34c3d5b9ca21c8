#pragma once

// The operad of spliced arrows over a free category. Colors are gap types
// (pairs of objects); an n-ary operation is a sequence of n+1 paths separated
// by n gaps, and composition splices operands into the gaps.

#include <string>
#include <utility>
#include <vector>

#include "arrowcfg/error.hpp"
#include "arrowcfg/freecat.hpp"

namespace arrowcfg {

struct GapType {
  std::string left;
  std::string right;

  friend bool operator==(const GapType&, const GapType&) = default;
  friend auto operator<=>(const GapType&, const GapType&) = default;
};

inline std::string to_string(const GapType& g) { return "(" + g.left + "," + g.right + ")"; }

struct SplicedArrow {
  GapType outer;
  std::vector<GapType> gaps;
  std::vector<Path> segments;

  std::size_t arity() const { return gaps.size(); }
  bool is_constant() const { return gaps.empty(); }

  /// The arrow of a constant.
  const Path& as_path() const {
    if (!is_constant()) throw Error(ErrorKind::type_mismatch, "spliced arrow is not a constant");
    return segments.front();
  }

  friend bool operator==(const SplicedArrow&, const SplicedArrow&) = default;
};

/// Lists typing violations: segment k must run from B_k to A_{k+1}, with
/// B_0 = outer.left and A_{n+1} = outer.right.
inline std::vector<std::string> check_spliced(const SplicedArrow& f) {
  std::vector<std::string> problems;
  const std::size_t n = f.gaps.size();
  if (f.segments.size() != n + 1) {
    problems.push_back("expected " + std::to_string(n + 1) + " segments, got " + std::to_string(f.segments.size()));
    return problems;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const std::string& from = k == 0 ? f.outer.left : f.gaps[k - 1].right;
    const std::string& to = k == n ? f.outer.right : f.gaps[k].left;
    const Path& w = f.segments[k];
    if (w.src != from || w.dst != to)
      problems.push_back("segment " + std::to_string(k) + " has type " + w.src + "->" + w.dst + ", expected " +
                         from + "->" + to);
  }
  return problems;
}

inline std::vector<std::string> check_spliced(const FiniteGraph& c, const SplicedArrow& f) {
  auto problems = check_spliced(f);
  for (std::size_t k = 0; k < f.segments.size(); ++k)
    if (!is_valid_path(c, f.segments[k])) problems.push_back("segment " + std::to_string(k) + " is not a path");
  return problems;
}

inline SplicedArrow make_spliced(GapType outer, std::vector<GapType> gaps, std::vector<Path> segments) {
  SplicedArrow f{std::move(outer), std::move(gaps), std::move(segments)};
  auto problems = check_spliced(f);
  if (!problems.empty()) throw Error(ErrorKind::type_mismatch, "ill-typed spliced arrow: " + problems.front());
  return f;
}

inline SplicedArrow spliced_constant(const Path& w) { return SplicedArrow{{w.src, w.dst}, {}, {w}}; }

/// id_A - id_B : (A,B) -> (A,B)
inline SplicedArrow spliced_identity(const GapType& g) {
  return SplicedArrow{g, {g}, {Path::identity(g.left), Path::identity(g.right)}};
}

/// Partial composition f ∘_i g: splices g into the i-th gap of f (0-indexed from the left).
inline SplicedArrow spliced_compose_partial(const SplicedArrow& f, std::size_t i, const SplicedArrow& g) {
  if (i >= f.arity())
    throw Error(ErrorKind::index, "gap index " + std::to_string(i) + " out of range for arity " +
                                      std::to_string(f.arity()));
  if (f.gaps[i] != g.outer)
    throw Error(ErrorKind::type_mismatch, "gap " + std::to_string(i) + " has type " + to_string(f.gaps[i]) +
                                              " but operand has type " + to_string(g.outer));
  const std::size_t m = g.arity();
  SplicedArrow r;
  r.outer = f.outer;
  r.gaps.assign(f.gaps.begin(), f.gaps.begin() + i);
  r.gaps.insert(r.gaps.end(), g.gaps.begin(), g.gaps.end());
  r.gaps.insert(r.gaps.end(), f.gaps.begin() + i + 1, f.gaps.end());

  r.segments.assign(f.segments.begin(), f.segments.begin() + i);
  Path head = path_compose(f.segments[i], g.segments.front());
  if (m == 0) {
    r.segments.push_back(path_compose(head, f.segments[i + 1]));
  } else {
    r.segments.push_back(std::move(head));
    r.segments.insert(r.segments.end(), g.segments.begin() + 1, g.segments.end() - 1);
    r.segments.push_back(path_compose(g.segments.back(), f.segments[i + 1]));
  }
  r.segments.insert(r.segments.end(), f.segments.begin() + i + 2, f.segments.end());
  return r;
}

/// Parallel composition f ∘ (g_1, ..., g_n).
inline SplicedArrow spliced_compose_parallel(const SplicedArrow& f, const std::vector<SplicedArrow>& gs) {
  if (gs.size() != f.arity())
    throw Error(ErrorKind::index, "parallel composition needs " + std::to_string(f.arity()) + " operands, got " +
                                      std::to_string(gs.size()));
  SplicedArrow r;
  r.outer = f.outer;
  Path cur = f.segments.front();
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const SplicedArrow& g = gs[k];
    if (f.gaps[k] != g.outer)
      throw Error(ErrorKind::type_mismatch, "gap " + std::to_string(k) + " has type " + to_string(f.gaps[k]) +
                                                " but operand has type " + to_string(g.outer));
    cur = path_compose(cur, g.segments.front());
    if (!g.is_constant()) {
      r.segments.push_back(std::move(cur));
      r.segments.insert(r.segments.end(), g.segments.begin() + 1, g.segments.end() - 1);
      cur = g.segments.back();
      r.gaps.insert(r.gaps.end(), g.gaps.begin(), g.gaps.end());
    }
    cur = path_compose(cur, f.segments[k + 1]);
  }
  r.segments.push_back(std::move(cur));
  return r;
}

/// W[F]: applies a functor segment-wise.
inline SplicedArrow apply_functor(const FreeFunctor& F, const SplicedArrow& f) {
  SplicedArrow r;
  r.outer = {F.map_object(f.outer.left), F.map_object(f.outer.right)};
  for (const auto& g : f.gaps) r.gaps.push_back({F.map_object(g.left), F.map_object(g.right)});
  for (const auto& w : f.segments) r.segments.push_back(apply_functor(F, w));
  return r;
}

/// Constants of gap type g: one per path of length at most max_len.
inline std::vector<SplicedArrow> constants_of(const FiniteGraph& c, const GapType& g, std::size_t max_len) {
  std::vector<SplicedArrow> out;
  for (auto& p : enumerate_paths(c, g.left, g.right, max_len)) out.push_back(spliced_constant(p));
  return out;
}

inline std::string format_spliced(const SplicedArrow& f) {
  std::string s;
  for (std::size_t k = 0; k < f.segments.size(); ++k) {
    if (k) s += "-";
    s += format_path(f.segments[k]);
  }
  return s;
}

}  // namespace arrowcfg
