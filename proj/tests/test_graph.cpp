#include <catch2/catch_amalgamated.hpp>

#include "artin/graph.hpp"
#include "helpers.hpp"

using namespace artin;
using namespace testutil;

TEST_CASE("graph parsing and canonical export", "[graph]") {
  const std::string text =
      "# four-vertex path\n"
      "vertices: d c b a\n"
      "edge: b a\n"
      "edge: c b\n"
      "edge: c d\n";
  PresentationGraph g = parse_graph_text(text);
  REQUIRE(g.size() == 4);
  CHECK(g.adjacent(g.vertex("a"), g.vertex("b")));
  CHECK_FALSE(g.adjacent(g.vertex("a"), g.vertex("c")));

  // export is canonical: sorted vertices, sorted edges, and a fixed point
  // of parse-then-export
  const std::string canon = export_graph_text(g);
  CHECK(canon ==
        "vertices: a b c d\n"
        "edge: a b\n"
        "edge: b c\n"
        "edge: c d\n");
  CHECK(export_graph_text(parse_graph_text(canon)) == canon);
  CHECK(parse_graph_text(canon) == *path4());
}

TEST_CASE("graph parse errors carry line numbers", "[graph]") {
  using Catch::Matchers::ContainsSubstring;
  CHECK_THROWS_WITH(parse_graph_text("edge: a b\n"), ContainsSubstring("line 1"));
  CHECK_THROWS_WITH(parse_graph_text("vertices: a b\nedge: a\n"), ContainsSubstring("line 2"));
  CHECK_THROWS_AS(parse_graph_text("vertices: a b\nedge: a c\n"), input_error);
  CHECK_THROWS_AS(parse_graph_text("vertices: a b\nedge: a a\n"), input_error);      // loop
  CHECK_THROWS_AS(parse_graph_text("vertices: a b\nedge: a b\nedge: b a\n"),
                  input_error);                                                      // duplicate
  CHECK_THROWS_AS(parse_graph_text("vertices: a a\n"), input_error);
  CHECK_THROWS_AS(parse_graph_text("vertices: a 1b\n"), input_error);
  CHECK_THROWS_AS(parse_graph_text("vertices: INF\n"), input_error);
  CHECK_THROWS_AS(parse_graph_text("hello: a\n"), input_error);
}

TEST_CASE("vertex cap", "[graph]") {
  std::vector<std::string> names;
  for (int i = 0; i < 65; ++i) names.push_back("v" + std::to_string(i));
  CHECK_THROWS_AS(PresentationGraph(names, {}), input_error);
  names.pop_back();
  CHECK_NOTHROW(PresentationGraph(names, {}));
}

TEST_CASE("opposite graph", "[graph]") {
  auto g = path4();
  PresentationGraph opp = g->opposite();
  CHECK(opp.edges() == std::vector<std::pair<Gen, Gen>>{{0, 2}, {0, 3}, {1, 3}});

  auto k = k22();
  PresentationGraph kopp = k->opposite();
  // exactly the two within-side edges survive
  CHECK(kopp.edges() ==
        std::vector<std::pair<Gen, Gen>>{{k->vertex("a1"), k->vertex("a2")},
                                         {k->vertex("b1"), k->vertex("b2")}});

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto r = random_graph(rng, 6);
    CHECK(r->opposite().opposite() == *r);
  }
}

TEST_CASE("opposite components and centre", "[graph]") {
  auto d = opp_components(k22());
  REQUIRE(d.count() == 2);
  CHECK(d.components[0] == std::vector<Gen>{0, 1});  // a1 a2
  CHECK(d.components[1] == std::vector<Gen>{2, 3});  // b1 b2
  CHECK(d.component_name(0) == "a1");
  CHECK(d.component_by_name("b2") == 1);
  CHECK(d.isolated.empty());

  CHECK(opp_components(path4()).count() == 1);
  CHECK(opp_components(free2()).count() == 1);  // opposite of edgeless is complete

  // one commuting pair: both generators are central
  auto z = z2();
  auto zd = opp_components(z);
  CHECK(zd.count() == 2);
  CHECK(zd.isolated == std::vector<Gen>{0, 1});
  CHECK(centre_rank(*z) == 2);
  CHECK_FALSE(is_centre_trivial(*z));

  CHECK(centre_rank(*free2()) == 0);
  CHECK(centre_rank(*path4()) == 0);
  CHECK(is_centre_trivial(*k22()));

  // a hub adjacent to all leaves is central
  auto star = make_graph({"a", "b", "c", "h"}, {{"h", "a"}, {"h", "b"}, {"h", "c"}});
  CHECK(core_generators(*star) == std::vector<Gen>{star->vertex("h")});
  CHECK(centre_rank(*star) == 1);

  CHECK(is_graph_irreducible(free2()));
  CHECK(is_graph_irreducible(path4()));
  CHECK_FALSE(is_graph_irreducible(k22()));
  CHECK_FALSE(is_graph_irreducible(z2()));
}

TEST_CASE("clique complex Euler characteristic", "[graph]") {
  CHECK(clique_euler(*free2()) == 2);
  CHECK(clique_euler(*free_n(3)) == 3);
  CHECK(clique_euler(*k22()) == 0);
  CHECK(clique_euler(*path4()) == 1);
  CHECK(clique_euler(*z2()) == 1);

  auto triangle = make_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK(clique_euler(*triangle) == 1);  // 3 - 3 + 1

  // join of graphs (complete bipartite between the parts):
  // chi = chi1 + chi2 - chi1*chi2
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto g1 = random_graph(rng, 3);
    auto g2 = random_graph(rng, 3);
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& n : g1->names()) names.push_back("x" + n);
    for (const auto& n : g2->names()) names.push_back("y" + n);
    for (auto [u, v] : g1->edges()) edges.emplace_back("x" + g1->name(u), "x" + g1->name(v));
    for (auto [u, v] : g2->edges()) edges.emplace_back("y" + g2->name(u), "y" + g2->name(v));
    for (const auto& n1 : g1->names())
      for (const auto& n2 : g2->names()) edges.emplace_back("x" + n1, "y" + n2);
    auto joined = make_graph(names, edges);
    long long c1 = clique_euler(*g1), c2 = clique_euler(*g2);
    CHECK(clique_euler(*joined) == c1 + c2 - c1 * c2);
  }
}
