#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <set>

#include "arrowcfg/grammar.hpp"
#include "arrowcfg/oracle.hpp"

namespace arrowcfg {

/// Compares L(g1) and L(g2) on paths of length at most max_len; returns the
/// least path (canonical order) in the symmetric difference, if any.
inline std::optional<Path> check_equiv_bounded(const Grammar& g1, const Grammar& g2, std::size_t max_len) {
  if (!(g1.category == g2.category))
    throw Error(ErrorKind::type_mismatch, "grammars are over different categories");
  auto l1 = enumerate_language(g1, max_len);
  auto l2 = enumerate_language(g2, max_len);
  std::set<Path> diff;
  std::set_symmetric_difference(l1.begin(), l1.end(), l2.begin(), l2.end(), std::inserter(diff, diff.end()));
  if (diff.empty()) return std::nullopt;
  return *diff.begin();
}

}  // namespace arrowcfg
