#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace arrowcfg;
using fixtures::word;

TEST_CASE("path composition concatenates and checks endpoints", "[freecat]") {
  FiniteGraph sigma = monoid_graph({"a", "b"});
  FiniteGraph em = end_marked(sigma);
  CHECK(path_compose(word(sigma, "a"), word(sigma, "b")) == word(sigma, "ab"));
  CHECK(path_compose(Path::identity("*"), word(sigma, "a")) == word(sigma, "a"));
  Path dollar = make_path(em, {"$"});
  CHECK_THROWS_AS(path_compose(dollar, word(em, "a")), Error);
  try {
    path_compose(dollar, word(em, "a"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::composition);
  }
}

TEST_CASE("make_path rejects ill-typed sequences", "[freecat]") {
  FiniteGraph em = end_marked(monoid_graph({"a"}));
  CHECK_THROWS_AS(make_path(em, {"$", "a"}), Error);
  CHECK_THROWS_AS(make_path(em, {"z"}), Error);
  CHECK(make_path(em, {"a", "$"}).dst == "top");
  CHECK_FALSE(is_valid_path(em, Path{"*", "*", {"$"}}));
}

TEST_CASE("graphs reject duplicate names and dangling generators", "[freecat]") {
  FiniteGraph g;
  g.add_object("A");
  CHECK_THROWS_AS(g.add_object("A"), Error);
  CHECK_THROWS_AS(g.add_generator({"f", "A", "B"}), Error);
  g.add_generator({"f", "A", "A"});
  CHECK_THROWS_AS(g.add_generator({"f", "A", "A"}), Error);
}

TEST_CASE("composition is associative and unital on short paths", "[freecat][property]") {
  FiniteGraph g({"A", "B"}, {{"f", "A", "B"}, {"g", "B", "A"}});
  std::vector<Path> all;
  for (const auto& s : g.objects())
    for (const auto& d : g.objects())
      for (auto& p : enumerate_paths(g, s, d, 4)) all.push_back(p);
  for (const auto& p : all) {
    CHECK(path_compose(Path::identity(p.src), p) == p);
    CHECK(path_compose(p, Path::identity(p.dst)) == p);
  }
  std::size_t triples = 0;
  for (const auto& p : all)
    for (const auto& q : all) {
      if (p.dst != q.src || p.length() + q.length() > 4) continue;
      for (const auto& r : all) {
        if (q.dst != r.src || p.length() + q.length() + r.length() > 4) continue;
        CHECK(path_compose(path_compose(p, q), r) == path_compose(p, path_compose(q, r)));
        ++triples;
      }
    }
  CHECK(triples == 70);
}

TEST_CASE("functors act homomorphically", "[freecat]") {
  FiniteGraph src = monoid_graph({"a", "b"});
  FiniteGraph dst = monoid_graph({"c", "d"});
  FreeFunctor F{src, dst, {{"*", "*"}}, {{"a", word(dst, "cd")}, {"b", Path::identity("*")}}};
  REQUIRE(F.check().empty());
  CHECK(apply_functor(F, word(src, "ab")) == word(dst, "cd"));
  CHECK(apply_functor(F, Path::identity("*")) == Path::identity("*"));
  FreeFunctor id = identity_functor(src);
  CHECK(apply_functor(id, word(src, "abba")) == word(src, "abba"));

  auto paths = enumerate_paths(src, "*", "*", 3);
  for (const auto& p : paths)
    for (const auto& q : paths)
      if (p.length() + q.length() <= 3)
        CHECK(apply_functor(F, path_compose(p, q)) == path_compose(apply_functor(F, p), apply_functor(F, q)));
}

TEST_CASE("functor typing violations are reported", "[freecat]") {
  FiniteGraph src = monoid_graph({"a"});
  FiniteGraph dst = end_marked(monoid_graph({"a"}));
  FreeFunctor F{src, dst, {{"*", "*"}}, {{"a", make_path(dst, {"a", "$"})}}};
  CHECK(F.check().size() == 1);
  CHECK_THROWS_AS(F.validate(), Error);
}

TEST_CASE("end marker adjoins top and $", "[freecat]") {
  FiniteGraph em = end_marked(monoid_graph({"a", "b"}));
  CHECK(em.objects() == std::vector<std::string>{"*", "top"});
  CHECK(em.generators().size() == 3);
  CHECK(em.generator("$").dst == "top");

  FiniteGraph empty = end_marked(monoid_graph({}));
  CHECK(empty.objects().size() == 2);
  CHECK(empty.generators().size() == 1);

  std::vector<std::string> shown;
  for (const auto& p : enumerate_paths(em, "*", "top", 2)) shown.push_back(format_path(p));
  CHECK(shown == std::vector<std::string>{"$", "a$", "b$"});

  auto a3 = enumerate_paths(end_marked(monoid_graph({"a"})), "*", "top", 3);
  REQUIRE(a3.size() == 3);
  CHECK(format_path(a3[2]) == "aa$");
}

TEST_CASE("ordinal sum with the terminal category is the end-marked category", "[freecat]") {
  FiniteGraph sigma = monoid_graph({"a", "b"});
  FiniteGraph os = ordinal_sum(sigma, terminal_graph());
  FiniteGraph em = end_marked(sigma);
  REQUIRE(os.objects() == em.objects());
  REQUIRE(os.generators().size() == em.generators().size());
  // isomorphic: the only new generator plays the role of $
  CHECK(os.generator(ordinal_link_name("*", "top")).src == "*");
  CHECK(os.generator(ordinal_link_name("*", "top")).dst == "top");

  CHECK(ordinal_sum(FiniteGraph{}, sigma) == sigma);

  auto paths = enumerate_paths(ordinal_sum(monoid_graph({"a"}), terminal_graph()), "*", "top", 3);
  REQUIRE(paths.size() == 3);
  CHECK(paths[0].gens == std::vector<std::string>{"e(*,top)"});
  CHECK(paths[2].gens == std::vector<std::string>{"a", "a", "e(*,top)"});
}

TEST_CASE("ordinal sum prefixes names on collision", "[freecat]") {
  FiniteGraph sigma = monoid_graph({"a"});
  FiniteGraph os = ordinal_sum(sigma, sigma);
  CHECK(os.has_object("l.*"));
  CHECK(os.has_object("r.*"));
  CHECK(os.has_generator("e(l.*,r.*)"));
}

TEST_CASE("path enumeration order and counts", "[freecat][property]") {
  FiniteGraph sigma = monoid_graph({"a", "b"});
  auto one = enumerate_paths(sigma, "*", "*", 1);
  REQUIRE(one.size() == 3);
  CHECK(one[0].is_identity());
  CHECK(format_path(one[1]) == "a");
  CHECK(format_path(one[2]) == "b");
  for (std::size_t sigma_size = 1; sigma_size <= 3; ++sigma_size) {
    std::vector<std::string> letters;
    for (std::size_t k = 0; k < sigma_size; ++k) letters.push_back(std::string(1, char('a' + k)));
    FiniteGraph g = monoid_graph(letters);
    for (std::size_t n = 0; n <= 4; ++n) {
      std::size_t expected = 0, power = 1;
      for (std::size_t k = 0; k <= n; ++k, power *= sigma_size) expected += power;
      auto paths = enumerate_paths(g, "*", "*", n);
      CHECK(paths.size() == expected);
      CHECK(std::is_sorted(paths.begin(), paths.end()));
    }
  }
  FiniteGraph g({"A", "B"}, {{"f", "B", "A"}});
  CHECK(enumerate_paths(g, "A", "B", 5).empty());
}
