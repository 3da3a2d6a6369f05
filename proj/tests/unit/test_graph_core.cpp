#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "qaoab/canonical.hpp"
#include "qaoab/cycles.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/maxcut.hpp"
#include "qaoab/named_graphs.hpp"
#include "qaoab/subgraph.hpp"

using namespace qaoab;

namespace {

// Brute-force cycle length census for tiny graphs.
int count_triangles(const Graph& g) {
  int t = 0;
  for (int a = 0; a < g.vertex_count(); ++a)
    for (int b = a + 1; b < g.vertex_count(); ++b)
      for (int c = b + 1; c < g.vertex_count(); ++c)
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++t;
  return t;
}

RootedSubgraph shuffled(const RootedSubgraph& s, std::mt19937_64& rng, bool swap_center) {
  const int n = s.graph.vertex_count();
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  std::shuffle(perm.begin() + 2, perm.end(), rng);
  if (swap_center) std::swap(perm[0], perm[1]);
  return RootedSubgraph{s.graph.relabeled(perm), s.depth};
}

}  // namespace

TEST_CASE("graph construction rejects invalid edges") {
  CHECK_THROWS_AS(Graph(2, {{0, 0}}), DomainError);
  CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), DomainError);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), DomainError);
  CHECK(complete_k4().is_cubic());
  CHECK_FALSE(Graph(2, {{0, 1}}).is_cubic());
}

TEST_CASE("edge list parsing and round trip") {
  const Graph g = parse_graph("0 1\n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);

  const Graph k4 = parse_graph("# K4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  CHECK(k4.is_cubic());

  for (const Graph& h : {petersen_graph(), heawood_graph(), mcgee_graph()}) {
    CHECK(parse_graph(serialize_graph(h)).same_edges(h));
  }

  try {
    parse_graph("0 1\n\n2 2\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_graph("0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("0 1\n0 2\n0 3\n0 4\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("0 x\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("0 1 2\n"), ParseError);
}

TEST_CASE("neighborhood subgraphs") {
  SUBCASE("single edge is its own neighborhood") {
    const Graph g(2, {{0, 1}});
    const auto s = neighborhood_subgraph(g, Edge(0, 1), 1);
    CHECK(s.graph.same_edges(g));
    // Not cubic, so interior completeness does not apply.
    CHECK_FALSE(s.valid());
  }
  SUBCASE("K4 at p=1 keeps five edges and all six agree") {
    const Graph k4 = complete_k4();
    std::set<std::string> keys;
    for (const Edge& e : k4.edges()) {
      const auto s = neighborhood_subgraph(k4, e, 1);
      CHECK(s.graph.vertex_count() == 4);
      CHECK(s.graph.edge_count() == 5);
      CHECK(s.valid());
      keys.insert(canonical_key(s));
    }
    CHECK(keys.size() == 1);
  }
  SUBCASE("girth-4 cube gives the 6-vertex tree") {
    const auto s = neighborhood_subgraph(cube_graph(), Edge(0, 1), 1);
    CHECK(s.graph.vertex_count() == 6);
    CHECK(s.graph.edge_count() == 5);
  }
  SUBCASE("girth-6 Heawood at p=2 gives the 14-vertex tree") {
    const auto s = neighborhood_subgraph(heawood_graph(), Edge(0, 1), 2);
    CHECK(s.graph.vertex_count() == 14);
    CHECK(s.graph.edge_count() == 13);
    CHECK(s.valid());
  }
  SUBCASE("interior completeness on random cubic graphs") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
      const Graph g = random_cubic_graph(20, rng);
      for (const Edge& e : g.edges()) {
        for (int p = 0; p <= 3; ++p) CHECK(neighborhood_subgraph(g, e, p).valid());
      }
    }
  }
  CHECK_THROWS_AS(neighborhood_subgraph(complete_k4(), Edge(0, 1), -1), DomainError);
  CHECK_THROWS_AS(neighborhood_subgraph(cube_graph(), Edge(0, 2), 1), DomainError);
}

TEST_CASE("canonical keys are relabeling invariant") {
  std::mt19937_64 rng(11);
  const auto tree2 = neighborhood_subgraph(heawood_graph(), Edge(0, 1), 2);
  const std::string key = canonical_key(tree2);
  for (int t = 0; t < 100; ++t) {
    const auto s = shuffled(tree2, rng, t % 2 == 1);
    CHECK(canonical_key(s) == key);
  }
  const RootedSubgraph edge{Graph(2, {{0, 1}}), 0};
  const RootedSubgraph swapped{Graph(2, {{1, 0}}), 0};
  CHECK(canonical_key(edge) == canonical_key(swapped));

  const auto single = neighborhood_subgraph(prism_graph(3), Edge(0, 1), 1);
  const auto twin = neighborhood_subgraph(complete_k4(), Edge(0, 1), 1);
  CHECK(canonical_key(single) != canonical_key(twin));

  // Random p=2 neighborhoods from random hosts, permuted many times.
  for (int t = 0; t < 10; ++t) {
    const Graph g = random_cubic_graph(16, rng);
    const auto s = neighborhood_subgraph(g, g.edges()[static_cast<size_t>(t)], 2);
    const std::string k = canonical_key(s);
    for (int r = 0; r < 50; ++r) CHECK(canonical_key(shuffled(s, rng, r % 2 == 0)) == k);
  }
}

TEST_CASE("canonical key separates non-isomorphic graphs with equal colour counts") {
  // 6-cycle vs two triangles: same degree sequence, uniform colouring.
  const Graph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  const Graph tt(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const std::vector<int> zero(6, 0);
  CHECK(canonical_form(c6, zero).key != canonical_form(tt, zero).key);
  // Petersen vs a random cubic 10-vertex graph relabeled: keys agree only for isomorphs.
  const Graph p = petersen_graph();
  const std::vector<int> z10(10, 0);
  std::vector<int> perm{3, 7, 1, 9, 0, 5, 2, 8, 6, 4};
  CHECK(canonical_form(p, z10).key == canonical_form(p.relabeled(perm), z10).key);
  CHECK(canonical_form(p, z10).key != canonical_form(prism_graph(5), z10).key);
  CHECK(from_hex(to_hex(canonical_form(p, z10).key)) == canonical_form(p, z10).key);
}

TEST_CASE("brute-force max cut") {
  const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(max_cut_brute(tri).best_cut == 2);
  const auto tree1 = neighborhood_subgraph(cube_graph(), Edge(0, 1), 1);
  const auto r = max_cut_brute(tree1.graph);
  CHECK(r.best_cut == 5);
  CHECK(r.total_edges == 5);
  CHECK(cut_value(tree1.graph, r.witness) == r.best_cut);
  const auto tree2 = neighborhood_subgraph(heawood_graph(), Edge(0, 1), 2);
  CHECK(max_cut_brute(tree2.graph).best_cut == 13);
  CHECK(max_cut_brute(petersen_graph()).best_cut == 12);
  CHECK(max_cut_brute(complete_k4()).best_cut == 4);
  const auto h = max_cut_brute(heawood_graph());
  CHECK(h.best_cut == 21);
  CHECK(cut_value(heawood_graph(), h.witness) == 21);
  CHECK_THROWS_AS(max_cut_brute(Graph(33, std::span<const Edge>{})), CapacityError);
}

TEST_CASE("minimum cycle basis") {
  const Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(minimum_cycle_basis(path).empty());
  const auto k4 = minimum_cycle_basis(complete_k4());
  REQUIRE(k4.size() == 3);
  for (const auto& c : k4) CHECK(c.size() == 3);
  CHECK(count_triangles(complete_k4()) == 4);

  for (const Graph& g : {petersen_graph(), heawood_graph(), mcgee_graph(), cube_graph(), dodecahedron_graph()}) {
    CHECK(static_cast<int>(minimum_cycle_basis(g).size()) == cycle_rank(g));
  }
  CHECK(girth(petersen_graph()) == 5);
  CHECK(girth(heawood_graph()) == 6);
  CHECK(girth(mcgee_graph()) == 7);
  CHECK(girth(mobius_kantor_graph()) == 6);
  CHECK(max_basis_cycle_length(cube_graph()) == 4);
  CHECK(max_basis_cycle_length(dodecahedron_graph()) == 5);
  CHECK(max_basis_cycle_length(heawood_graph()) == 6);
  CHECK(max_basis_cycle_length(mcgee_graph()) == 7);
  CHECK(cycle_space_spanned_by(heawood_graph(), 6));
  CHECK_FALSE(cycle_space_spanned_by(heawood_graph(), 5));

  // Each returned cycle is a closed walk over existing edges.
  for (const auto& c : minimum_cycle_basis(petersen_graph())) {
    for (size_t i = 0; i < c.size(); ++i) CHECK(petersen_graph().has_edge(c[i], c[(i + 1) % c.size()]));
  }
}
