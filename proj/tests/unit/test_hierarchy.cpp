#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "qaoab/atlas_build.hpp"
#include "qaoab/bounds.hpp"
#include "qaoab/cycles.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/hierarchy.hpp"
#include "qaoab/named_graphs.hpp"
#include "qaoab/subgraph.hpp"

using namespace qaoab;

namespace {

Atlas fixed_atlas(int p) {
  Atlas a = make_atlas_skeleton(p);
  AtlasBuildOptions opts;
  opts.optimize = false;
  fill_atlas_values(a, opts);
  return a;
}

int triangles(const Graph& g) {
  int t = 0;
  for (const Edge& e : g.edges()) {
    for (const int w : g.neighbors(e.u)) {
      if (w > e.v && g.has_edge(w, e.v)) ++t;
    }
  }
  return t;
}

}  // namespace

TEST_CASE("gadgets") {
  const auto g1 = make_gadget(1);
  CHECK(g1.vertex_count() == 6);
  CHECK(g1.edge_count() == 10);
  CHECK(girth(g1.fragment) == 4);
  const auto g2 = make_gadget(2);
  CHECK(g2.vertex_count() == 16);
  CHECK(g2.edge_count() == 25);
  CHECK(girth(g2.fragment) == 6);
  CHECK_THROWS_AS(make_gadget(3), DomainError);
}

TEST_CASE("edge replacement") {
  const auto g1 = make_gadget(1);
  const Graph k4 = complete_k4();
  const Graph once = replace_edge(k4, Edge(0, 1), g1);
  CHECK(once.vertex_count() == 10);
  CHECK(once.is_cubic());
  CHECK(triangles(k4) == 4);
  CHECK(triangles(once) == 2);
  CHECK_THROWS_AS(replace_edge(once, Edge(0, 1), g1), DomainError);

  // Replacing every original edge of K4 leaves a graph of tree-class edges.
  Graph g = k4;
  for (const Edge& e : k4.edges()) g = replace_edge(g, e, g1);
  CHECK(g.is_cubic());
  CHECK(girth(g) >= 4);
  const Atlas a1 = make_atlas_skeleton(1);
  CHECK(a1.count_subgraphs(g).counts[static_cast<size_t>(a1.tree_index())] == g.edge_count());

  const Atlas a2 = fixed_atlas(2);
  const Graph hea = heawood_graph();
  const Graph hea2 = replace_edge(hea, hea.edges().front(), make_gadget(2));
  CHECK(hea2.is_cubic());
  CHECK(std::fabs(lower_bound_fixed_angles(hea2, 2, a2, fixed_angles(2)).lower_bound - 0.7559) < 1e-3);
}

TEST_CASE("single-layer environments") {
  const Atlas a1 = fixed_atlas(1);
  const auto gadget = make_gadget(1);
  const auto all = enumerate_environments(a1, gadget, false);
  CHECK(all.size() == 6);
  CHECK(count_relevant(all) == 4);
  const auto relevant = enumerate_environments(a1, gadget, true);
  CHECK(relevant.size() == 4);

  const int two_triangles = 0;
  int with_two = 0;
  for (const auto& env : all) {
    CHECK(cycle_space_spanned_by(env.host, 3));
    for (const auto& [e, k] : env.assignment) CHECK(a1.classify_edge(env.host, e) == k);
    if (env.center_class == two_triangles) {
      ++with_two;
      int singles = 0;
      for (const auto& [e, k] : env.assignment) singles += k == 1;
      CHECK(singles >= 4);
    }
  }
  CHECK(with_two == 1);

  const double bound = a1[a1.tree_index()].f_fixed;
  bool found = false;
  for (const auto& env : relevant) {
    const auto c = check_clauses(env, a1, bound);
    CHECK(c.b);
    if (c.c == Rational(12, 5) && c.c_after == Rational(59, 5)) {
      found = true;
      CHECK(std::fabs(c.f_after - 8.253) < 1e-3);
      CHECK(std::fabs(c.f - 1.8551) < 1e-3);
    }
  }
  CHECK(found);

  const auto report = verify_hierarchy(a1);
  CHECK(report.pass);
  CHECK(report.relevant_count == 4);
  CHECK(report.summary() == "PASS 4/4 environments, bound 0.6924");
}

TEST_CASE("replacement only reaches edges whose neighborhood holds the center") {
  for (int p = 1; p <= 2; ++p) {
    const Atlas atlas = make_atlas_skeleton(p);
    const auto gadget = make_gadget(p);
    std::mt19937_64 rng(100 + p);
    for (int trial = 0; trial < 30; ++trial) {
      const Graph g = random_cubic_graph(8 + 2 * (trial % 6), rng);
      const Edge center = g.edges()[rng() % g.edges().size()];
      const Graph h = replace_edge(g, center, gadget);
      CHECK(h.is_cubic());
      CHECK(h.vertex_count() == g.vertex_count() + gadget.vertex_count());
      CHECK(h.edge_count() == g.edge_count() - 1 + gadget.edge_count());
      const Vertex ends[] = {center.u, center.v};
      const auto dist = g.distances_from(ends);
      for (const Edge& e : g.edges()) {
        if (e == center) continue;
        if (atlas.classify_edge(g, e) != atlas.classify_edge(h, e)) {
          CHECK(std::min(dist[static_cast<size_t>(e.u)], dist[static_cast<size_t>(e.v)]) <= p - 1);
        }
      }
    }
  }
}

TEST_CASE("clause checks") {
  const Atlas a1 = fixed_atlas(1);
  EnvironmentRecord tree;
  tree.p = 1;
  tree.center_class = a1.tree_index();
  tree.gadget_classes.assign(10, a1.tree_index());
  const double bound = a1[a1.tree_index()].f_fixed;
  const auto c = check_clauses(tree, a1, bound);
  CHECK(c.a);
  CHECK(c.b);
  CHECK(c.c_clause);
  CHECK_FALSE(c.degenerate);

  EnvironmentRecord same = tree;
  same.gadget_classes = {a1.tree_index()};
  CHECK(check_clauses(same, a1, bound).degenerate);
}

TEST_CASE("verification limits and checkpoints") {
  const Atlas a1 = fixed_atlas(1);
  HierarchyOptions bad;
  bad.shard_count = 2;
  bad.shard_index = 2;
  CHECK_THROWS_AS(verify_hierarchy(a1, bad), DomainError);

  const auto path = std::filesystem::temp_directory_path() / "qaoab_hierarchy_checkpoint.jsonl";
  std::filesystem::remove(path);
  HierarchyOptions first;
  first.checkpoint = path.string();
  first.shard_count = 2;
  first.shard_index = 0;
  const auto part = verify_hierarchy(a1, first);
  HierarchyOptions rest;
  rest.checkpoint = path.string();
  int visited = 0;
  rest.progress = [&](int, int) { ++visited; };
  const auto full = verify_hierarchy(a1, rest);
  CHECK(visited == 1);
  CHECK(part.relevant_count < full.relevant_count);
  CHECK(full.relevant_count == 4);
  CHECK(full.pass);
  std::filesystem::remove(path);
}
