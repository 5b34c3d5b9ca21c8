#include <catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"

using namespace arrowcfg;
using fixtures::word;

namespace {

/// (a|b)*a with states p (start) and q (accepting)
ClassicalNfa ends_in_a() {
  return {{"a", "b"}, {"p", "q"}, {{"p", "a", "p"}, {"p", "b", "p"}, {"p", "a", "q"}}, "p", {"q"}};
}

Path with_end(const FiniteGraph& em, const Path& w) {
  Path p = w;
  p.gens.push_back("$");
  p.dst = "top";
  REQUIRE(is_valid_path(em, p));
  return p;
}

}  // namespace

TEST_CASE("automata are typed over their base", "[automaton]") {
  CHECK(check(fixtures::m_evena()).empty());
  Automaton bad = fixtures::m_evena();
  bad.base = end_marked(bad.base);
  bad.states.push_back({"t", "top"});
  bad.transitions.push_back({"bad", "e", "t", "a"});
  CHECK(check(bad).size() == 1);
  CHECK_THROWS_AS(require_valid(bad), Error);
}

TEST_CASE("run membership and enumeration", "[automaton]") {
  Automaton m = fixtures::m_evena();
  const auto& c = m.base;
  CHECK(run_membership(m, word(c, "abab")));
  CHECK(enumerate_runs(m, word(c, "abab"), "e", "e").size() == 1);
  CHECK_FALSE(run_membership(m, word(c, "a")));
  CHECK(run_membership(m, Path::identity("*")));
  auto id = enumerate_runs(m, Path::identity("*"), "o", "o");
  REQUIRE(id.size() == 1);
  CHECK(id[0] == Path::identity("o"));
  CHECK(enumerate_runs(m, Path::identity("*"), "e", "o").empty());

  Automaton n = m;
  n.final = "o";
  CHECK_FALSE(run_membership(n, Path::identity("*")));
}

TEST_CASE("membership is equivalent to having a run", "[automaton][property]") {
  std::vector<Automaton> ms{fixtures::m_evena(), import_classical(ends_in_a()),
                            interval_automaton(monoid_graph({"a", "b"}), word(monoid_graph({"a", "b"}), "aabb"))};
  for (const auto& m : ms) {
    for (const auto& w : enumerate_paths(m.base, m.over(m.initial), m.over(m.final), 6))
      CHECK(run_membership(m, w) == !enumerate_runs(m, w, m.initial, m.final).empty());
  }
}

TEST_CASE("classical import recognizes w$", "[automaton][property]") {
  ClassicalNfa nfa = ends_in_a();
  Automaton m = import_classical(nfa);
  CHECK(m.base == end_marked(monoid_graph({"a", "b"})));
  CHECK(run_membership(m, make_path(m.base, {"a", "a", "$"})));
  CHECK_FALSE(run_membership(m, make_path(m.base, {"b", "$"})));

  ClassicalNfa eps_in = nfa;
  eps_in.finals = {"p"};
  ClassicalNfa none = nfa;
  none.finals = {};
  FiniteGraph sigma = monoid_graph({"a", "b"});
  for (const auto& n : {nfa, eps_in, none}) {
    Automaton im = import_classical(n);
    for (const auto& w : enumerate_paths(sigma, "*", "*", 5))
      CHECK(classical_accepts(n, w.gens) == run_membership(im, with_end(im.base, w)));
  }
  // ε accepted exactly when the initial state is final, with no closure artifact
  Automaton e = import_classical(eps_in);
  CHECK(run_membership(e, make_path(e.base, {"$"})));
  CHECK(enumerate_regular_language(import_classical(none), 6).empty());
}

TEST_CASE("classical import rejects epsilon transitions", "[automaton]") {
  ClassicalNfa n = ends_in_a();
  n.transitions.push_back({"p", "_", "q"});
  try {
    import_classical(n);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported);
  }
  ClassicalNfa u = ends_in_a();
  u.transitions.push_back({"p", "z", "q"});
  CHECK_THROWS_AS(import_classical(u), Error);
}

TEST_CASE("lift to spliced arrows", "[automaton]") {
  WordsLift lift(fixtures::m_evena());
  const auto& c = lift.automaton().base;
  CHECK(lift.accepts(word(c, "abab")));
  CHECK_FALSE(lift.accepts(word(c, "ab")));

  // a-a: each segment has one run from each state
  SplicedArrow aa{{"*", "*"}, {{"*", "*"}}, {word(c, "a"), word(c, "a")}};
  auto all = lift.lifts(aa);
  CHECK(all.size() == 4);
  // from e back to e the gap is forced to (o,o)
  auto ee = lift.lifts(aa, {"e", "e"});
  REQUIRE(ee.size() == 1);
  CHECK(ee[0].gaps[0] == GapType{"o", "o"});
  for (const auto& l : all) CHECK(check_spliced(state_graph(lift.automaton()), l).empty());
  // the product of per-segment run counts
  SplicedArrow mixed{{"*", "*"}, {{"*", "*"}, {"*", "*"}}, {word(c, "ab"), Path::identity("*"), word(c, "b")}};
  std::size_t expected = 1;
  for (const auto& w : mixed.segments) expected *= enumerate_all_runs(lift.automaton(), w).size();
  CHECK(lift.lifts(mixed).size() == expected);

  auto ids = lift.lifts(spliced_identity({"*", "*"}));
  CHECK(ids.size() == 4);
  for (const auto& l : ids) CHECK((l.segments[0].is_identity() && l.segments[1].is_identity()));

  for (const auto& w : enumerate_paths(c, "*", "*", 6)) CHECK(lift.accepts(w) == run_membership(lift.automaton(), w));
}

TEST_CASE("tree automata", "[automaton]") {
  Species s = fixtures::spc_sample();
  using T = DerivationTree;

  TreeAutomaton all{s, {"q"}, {}, {}, "q"};
  for (const auto& x : s.nodes()) all.transitions.push_back({x.name, std::vector<std::string>(x.arity(), "q"), "q", x.name});
  CHECK(check(all).empty());
  for (const auto& t : enumerate_closed_trees(s, "1", 4)) CHECK(tree_accept(all, t));

  // f-chains must alternate between states p and q; everything else lands in q
  TreeAutomaton alt{s, {"p", "q"}, {}, {}, "q"};
  alt.transitions.push_back({"g", {}, "q", "g"});
  alt.transitions.push_back({"fp", {"q"}, "p", "f"});
  alt.transitions.push_back({"fq", {"p"}, "q", "f"});
  CHECK(check(alt).empty());
  CHECK(tree_accept(alt, T::apply("g")));
  CHECK_FALSE(tree_accept(alt, T::apply("f", {T::apply("g")})));
  CHECK(tree_accept(alt, T::apply("f", {T::apply("f", {T::apply("g")})})));
  CHECK_FALSE(tree_accept(alt, T::apply("b")));

  TreeAutomaton no_c = all;
  std::erase_if(no_c.transitions, [](const TreeTransition& t) { return t.over == "c"; });
  for (const auto& t : enumerate_closed_trees(s, "1", 4)) {
    bool has_c = false;
    for (const auto& l : preorder(t)) has_c = has_c || l == "c";
    CHECK(tree_accept(no_c, t) == !has_c);
  }

  TreeAutomaton broken = all;
  broken.transitions.push_back({"bad", {"q"}, "q", "a"});
  CHECK_FALSE(check(broken).empty());
}

TEST_CASE("interval automata", "[automaton]") {
  FiniteGraph sigma = monoid_graph({"a", "b"});
  Automaton m = interval_automaton(sigma, word(sigma, "aabb"));
  CHECK(m.states.size() == 5);
  CHECK(m.transitions.size() == 4);
  auto lang = enumerate_regular_language(m, 6);
  REQUIRE(lang.size() == 1);
  CHECK(*lang.begin() == word(sigma, "aabb"));

  Automaton e = interval_automaton(sigma, Path::identity("*"));
  CHECK(e.states.size() == 1);
  CHECK(enumerate_regular_language(e, 4) == std::set<Path>{Path::identity("*")});

  FiniteGraph em = end_marked(sigma);
  Automaton t = interval_automaton(em, make_path(em, {"a", "b", "$"}));
  CHECK(t.over("0") == "*");
  CHECK(t.over("3") == "top");
  CHECK(check(t).empty());
}

TEST_CASE("bounded unique lifting of factorizations", "[automaton]") {
  for (const Automaton& m : {fixtures::m_evena(), import_classical(ends_in_a()),
                             interval_automaton(monoid_graph({"a", "b"}), word(monoid_graph({"a", "b"}), "abba"))})
    CHECK_FALSE(ulf_check_bounded(projection(m), 4).has_value());
  CHECK_FALSE(ulf_check_bounded(identity_functor(monoid_graph({"a", "b"})), 4).has_value());

  // a generator collapsed to an identity: id = id ∘ id lifts in several ways
  FiniteGraph one({"q"}, {{"eps", "q", "q"}});
  FreeFunctor collapse{one, monoid_graph({"a"}), {{"q", "*"}}, {{"eps", Path::identity("*")}}};
  auto v = ulf_check_bounded(collapse, 4);
  REQUIRE(v.has_value());
  CHECK(v->u.is_identity());
  CHECK(v->lifts >= 2);

  // a generator sent to a length-2 path: the middle split has no lift
  FreeFunctor stretch{one, monoid_graph({"a"}), {{"q", "*"}}, {{"eps", word(monoid_graph({"a"}), "aa")}}};
  auto s = ulf_check_bounded(stretch, 2);
  REQUIRE(s.has_value());
  CHECK(s->lifts == 0);
}
