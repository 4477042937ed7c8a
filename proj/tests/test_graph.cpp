#include "doctest.h"

#include "dlc/error.hpp"
#include "dlc/graph.hpp"
#include "oracles.hpp"

using namespace dlc;

namespace {
Graph labelled(std::vector<std::pair<std::string, std::string>> edges) { return from_edge_list(edges); }
}  // namespace

TEST_CASE("edge lists collapse duplicates and self pairs") {
  const Graph g = labelled({{"a", "b"}, {"b", "a"}, {"a", "a"}});
  CHECK(g.order() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.label(0) == "a");
  CHECK(g.label(1) == "b");

  CHECK(labelled({}).order() == 0);

  const Graph p = labelled({{"a", "b"}, {"b", "c"}});
  CHECK(p.degree(0) == 1);
  CHECK(p.degree(1) == 2);
  CHECK(p.degree(2) == 1);
}

TEST_CASE("adjacency is symmetric and sorted") {
  for (const Graph& g : oracle::random_corpus()) {
    for (Vertex u = 0; u < g.order(); ++u) {
      auto nbrs = g.neighbors(u);
      CHECK(std::is_sorted(nbrs.begin(), nbrs.end()));
      for (Vertex v : nbrs) {
        CHECK(v != u);
        CHECK(g.has_edge(v, u));
      }
    }
  }
}

TEST_CASE("components") {
  CHECK(connected_components(oracle::path(3)).count() == 1);
  const auto two = connected_components(Graph::from_edges(4, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 3}}));
  CHECK(two.count() == 2);
  CHECK(two.sizes == std::vector<std::size_t>{2, 2});
  CHECK(connected_components(Graph()).count() == 0);

  for (const Graph& g : oracle::random_corpus()) {
    const auto part = connected_components(g);
    std::size_t total = 0;
    for (auto s : part.sizes) total += s;
    CHECK(total == g.order());
    for (auto [u, v] : g.edge_list()) CHECK(part.component_of[u] == part.component_of[v]);
  }
}

TEST_CASE("giant component") {
  // P3 on {2,3,4} plus K2 on {0,1}
  const Graph g = Graph::from_edges(5, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 3}, {3, 4}});
  const auto sub = giant_component(g);
  CHECK(sub.graph.order() == 3);
  CHECK(sub.graph.edge_count() == 2);
  CHECK(sub.new_to_old == std::vector<Vertex>{2, 3, 4});
  CHECK_FALSE(sub.old_to_new[0].has_value());
  CHECK(*sub.old_to_new[4] == 2);
  CHECK(sub.graph.label(0) == "2");

  const Graph pair = Graph::from_edges(4, std::vector<std::pair<Vertex, Vertex>>{{2, 3}, {0, 1}});
  CHECK(giant_component(pair).new_to_old == std::vector<Vertex>{0, 1});

  const Graph p = oracle::path(4);
  CHECK(giant_component(p).graph == p);

  CHECK_THROWS_AS(giant_component(Graph()), InputError);

  for (const Graph& r : oracle::random_corpus()) {
    const Graph once = giant_component(r).graph;
    CHECK(giant_component(once).graph == once);
  }
}

TEST_CASE("star and clique edits leave the input alone") {
  const Graph empty(4);
  const std::vector<Vertex> leaves{1, 2, 3};
  const Graph s = add_star(empty, 0, leaves);
  CHECK(s.degree(0) == 3);
  CHECK(s.degree(3) == 1);
  CHECK(empty.edge_count() == 0);

  const Graph p3 = oracle::path(3);
  CHECK(add_star(p3, 0, std::vector<Vertex>{1}) == p3);
  CHECK(add_star(p3, 0, std::vector<Vertex>{2}) == oracle::complete(3));
  CHECK_THROWS_WITH_AS(add_star(p3, 1, std::vector<Vertex>{1}), "self-loop requested", InputError);

  CHECK(add_clique(Graph(3), std::vector<Vertex>{0, 1, 2}) == oracle::complete(3));
  CHECK(add_clique(oracle::complete(3), std::vector<Vertex>{0, 1, 2}) == oracle::complete(3));
  CHECK(add_clique(p3, std::vector<Vertex>{0, 2}) == oracle::complete(3));
  CHECK_THROWS_WITH_AS(add_clique(p3, std::vector<Vertex>{0}), "degenerate clique", InputError);
  CHECK_THROWS_AS(add_star(p3, 0, std::vector<Vertex>{7}), InputError);
}

TEST_CASE("star edge count matches the missing root edges") {
  std::uint64_t seed = 5;
  for (const Graph& g : oracle::random_corpus()) {
    const Vertex root = static_cast<Vertex>(seed++ % g.order());
    std::vector<Vertex> leaves;
    std::size_t missing = 0;
    for (Vertex v = 0; v < g.order(); v += 2) {
      if (v == root) continue;
      leaves.push_back(v);
      if (!g.has_edge(root, v)) ++missing;
    }
    const auto before = g.edge_list();
    const Graph h = add_star(g, root, leaves);
    CHECK(h.edge_count() == g.edge_count() + missing);
    CHECK(g.edge_list() == before);
  }
}

TEST_CASE("remove vertex") {
  const Graph s = oracle::star(3);
  const Graph r = remove_vertex(s, 0);
  CHECK(r.order() == 3);
  CHECK(r.edge_count() == 0);
  CHECK(r.label(0) == "1");
}
