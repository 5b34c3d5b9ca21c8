#include <catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"

using namespace arrowcfg;
using fixtures::word;

namespace {

std::set<Path> words(const FiniteGraph& c, std::initializer_list<const char*> ws) {
  std::set<Path> out;
  for (const char* w : ws) out.insert(word(c, w));
  return out;
}

}  // namespace

TEST_CASE("grammar languages", "[oracle]") {
  Grammar ab = fixtures::g_ab();
  CHECK(enumerate_language(ab, 8) == words(ab.category, {"ab", "aabb", "aaabbb", "aaaabbbb"}));
  Grammar amb = fixtures::g_amb();
  CHECK(enumerate_language(amb, 3) == words(amb.category, {"a", "aa", "aaa"}));
  Grammar eps = fixtures::g_eps();
  CHECK(enumerate_language(eps, 4) == words(eps.category, {"", "ab", "aabb"}));

  Grammar empty;
  empty.category = monoid_graph({"a"});
  empty.add_nonterminal("S", {"*", "*"});
  empty.start = "S";
  CHECK(enumerate_language(empty, 8).empty());
  CHECK(enumerate_derivations(empty, "S", 8, 10).empty());
}

TEST_CASE("per-color languages", "[oracle]") {
  Grammar g = fixtures::g_end();
  auto langs = enumerate_color_languages(g, 4);
  CHECK(langs["E"] == std::set<Path>{make_path(g.category, {"a", "b"}), make_path(g.category, {"a", "a", "b", "b"}),
                                     make_path(g.category, {"a", "b", "a", "b"})});
  CHECK(langs["S"] == std::set<Path>{make_path(g.category, {"a", "b", "$"})});
}

TEST_CASE("regular languages", "[oracle]") {
  Automaton m = fixtures::m_evena();
  CHECK(enumerate_regular_language(m, 3) == words(m.base, {"", "b", "aa", "bb", "aab", "aba", "baa", "bbb"}));
  FiniteGraph ab = monoid_graph({"a", "b"});
  CHECK(enumerate_regular_language(interval_automaton(ab, word(ab, "aabb")), 6) == words(ab, {"aabb"}));
}

TEST_CASE("derivation counts follow the Catalan recurrence", "[oracle]") {
  // C(0) = 1, C(n+1) = sum C(i) C(n-i), computed here rather than tabulated
  std::vector<std::size_t> catalan{1};
  for (std::size_t n = 0; n < 6; ++n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i <= n; ++i) c += catalan[i] * catalan[n - i];
    catalan.push_back(c);
  }
  Grammar amb = fixtures::g_amb();
  auto counts = oracle_parse_counts(amb, 6, 11);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(counts[word(amb.category, std::string(n, 'a'))] == catalan[n - 1]);
}

TEST_CASE("derivations evaluate to their words", "[oracle]") {
  for (const Grammar& g : {fixtures::g_ab(), fixtures::g_amb(), fixtures::g_end(), fixtures::g_tern()}) {
    auto ds = enumerate_derivations(g, g.start, 6, 14);
    std::set<std::vector<std::string>> distinct;
    for (const auto& d : ds) {
      CHECK(eval_tree(g, d.tree).as_path() == d.word);
      CHECK(d.word.length() <= 6);
      distinct.insert(preorder(d.tree));
    }
    CHECK(distinct.size() == ds.size());
  }
}

TEST_CASE("bounded equivalence", "[oracle]") {
  CHECK_FALSE(check_equiv_bounded(fixtures::g_ab(), bilinearize(fixtures::g_ab()), 8).has_value());
  auto cex = check_equiv_bounded(fixtures::g_ab(), fixtures::g_amb({"a", "b"}), 2);
  REQUIRE(cex.has_value());
  CHECK(*cex == word(monoid_graph({"a", "b"}), "a"));
  CHECK_THROWS_AS(check_equiv_bounded(fixtures::g_ab(), fixtures::g_amb(), 2), Error);
}
