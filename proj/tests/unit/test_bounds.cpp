#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "doctest.h"
#include "qaoab/atlas_build.hpp"
#include "qaoab/bounds.hpp"
#include "qaoab/cycles.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/maxcut.hpp"
#include "qaoab/named_graphs.hpp"
#include "qaoab/qaoa.hpp"

using namespace qaoab;

namespace {

const Atlas& fixed_atlas(int p) {
  static Atlas cache[3];
  Atlas& a = cache[p];
  if (a.size() == 0) {
    a = make_atlas_skeleton(p);
    AtlasBuildOptions opts;
    opts.optimize = false;
    fill_atlas_values(a, opts);
  }
  return a;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(2, 3) < Rational(3, 4));
  CHECK(Rational(6, 7).str() == "6/7");
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("fixed-angle lower bounds") {
  const Atlas& a1 = fixed_atlas(1);
  const Atlas& a2 = fixed_atlas(2);

  const auto k4 = lower_bound_fixed_angles(complete_k4(), 1, a1, fixed_angles(1), "K4");
  CHECK(std::fabs(k4.lower_bound - 0.5813 / 0.8) < 1e-3);
  CHECK(k4.denominator == Rational(24, 5));

  const auto heawood = lower_bound_fixed_angles(heawood_graph(), 2, a2, fixed_angles(2));
  CHECK(std::fabs(heawood.lower_bound - 0.7559) < 1e-3);
  CHECK(heawood.counts.counts[static_cast<size_t>(a2.tree_index())] == 21);

  // Girth at least 2p+2 leaves only tree edges.
  const auto dodeca = lower_bound_fixed_angles(dodecahedron_graph(), 1, a1, fixed_angles(1));
  CHECK(dodeca.lower_bound == doctest::Approx(a1[a1.tree_index()].f_fixed).epsilon(1e-12));

  const Graph path(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_WITH_AS(lower_bound_fixed_angles(path, 1, a1, fixed_angles(1)), "graph is not 3-regular: vertex 0 has degree 1",
                       DomainError);
  CHECK_THROWS_AS(lower_bound_fixed_angles(complete_k4(), 2, a1, fixed_angles(2)), DomainError);
  CHECK_THROWS_AS(lower_bound_fixed_angles(complete_k4(), 1, a1, fixed_angles(2)), DomainError);
}

TEST_CASE("bound numerator equals the whole-graph expectation") {
  const Atlas& a1 = fixed_atlas(1);
  const Atlas& a2 = fixed_atlas(2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = random_cubic_graph(trial < 3 ? 8 : 12, rng);
    for (int p = 1; p <= 2; ++p) {
      const Atlas& atlas = p == 1 ? a1 : a2;
      const auto r = lower_bound_fixed_angles(g, p, atlas, fixed_angles(p));
      const auto per_edge = full_graph_edge_expectations(g, fixed_angles(p));
      const double total = std::accumulate(per_edge.begin(), per_edge.end(), 0.0);
      CHECK(std::fabs(r.numerator - total) < 1e-10);
      CHECK(r.lower_bound <= 1.0);
      CHECK(r.lower_bound > 0.0);
    }
  }
}

TEST_CASE("report formats") {
  const auto r = lower_bound_fixed_angles(complete_k4(), 1, fixed_atlas(1), fixed_angles(1), "k4");
  const std::string tsv = report_tsv(r);
  CHECK(tsv.rfind("k4\t1\t", 0) == 0);
  CHECK(tsv.find("24/5") != std::string::npos);
  const std::string js = report_json(r);
  CHECK(js.find("\"lower_bound\"") != std::string::npos);
  CHECK(js.find("\"denominator\": \"24/5\"") != std::string::npos);
}

TEST_CASE("ordering bound") {
  CHECK(std::fabs(ordering_lower_bound(std::vector<RatioTerm>{{0.6924, Rational(1), 1}}) - 0.6924) < 1e-12);
  CHECK(std::fabs(ordering_lower_bound(std::vector<RatioTerm>{{0.4258, Rational(6, 7), 1}}) - 0.4968) < 1e-4);
  CHECK_THROWS_AS(ordering_lower_bound(std::vector<RatioTerm>{}), DomainError);
  CHECK_THROWS_AS(ordering_lower_bound(std::vector<RatioTerm>{{0.0, Rational(1), 1}}), DomainError);

  // Adding terms in increasing f/c order never lowers the running bound.
  const Atlas& a2 = fixed_atlas(2);
  std::vector<RatioTerm> terms;
  for (const auto& e : a2.entries()) terms.push_back({e.f_fixed, Rational(e.cut.best_cut, e.cut.total_edges), 1 + e.index % 3});
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(terms.begin(), terms.end(), rng);
    std::sort(terms.begin(), terms.end(), [](const RatioTerm& x, const RatioTerm& y) { return x.f / x.c.value() < y.f / y.c.value(); });
    double last = 0;
    for (size_t n = 1; n <= terms.size(); ++n) {
      const double v = ordering_lower_bound(std::span<const RatioTerm>(terms.data(), n));
      CHECK(v >= last - 1e-12);
      last = v;
    }
  }
}

TEST_CASE("environment bound") {
  const Atlas& a2 = fixed_atlas(2);
  const std::vector<int> trees(5, a2.tree_index());
  CHECK(std::fabs(environment_lower_bound(trees, a2) - 0.7559) < 1e-3);
  const std::vector<int> bad = {a2.size()};
  CHECK_THROWS_AS(environment_lower_bound(bad, a2), IntegrityError);
}

TEST_CASE("upper bound and tilings") {
  CHECK(upper_bound_cmin(1) == Rational(4, 5));
  CHECK(upper_bound_cmin(2) == Rational(6, 7));
  CHECK(upper_bound_cmin(50).value() == doctest::Approx(1 - 1.0 / 103));
  CHECK_THROWS_AS(upper_bound_cmin(0), DomainError);

  for (int p = 1; p <= 2; ++p) {
    const auto t = build_qgon_tilings(p);
    const Atlas& atlas = fixed_atlas(p);
    for (const Graph* g : {&t.even, &t.odd}) {
      CHECK(g->is_cubic());
      const auto counts = atlas.count_subgraphs(*g);
      CHECK(counts.counts[static_cast<size_t>(atlas.tree_index())] == g->edge_count());
    }
    const CutResult cut = max_cut_brute(t.even);
    CHECK(cut.best_cut == t.even.edge_count());
    CHECK(cut_value(t.even, cut.witness) == t.even.edge_count());
  }
  CHECK_THROWS_AS(build_qgon_tilings(3), DomainError);
}

TEST_CASE("plot data") {
  const auto rows = plot_rows(false);
  REQUIRE(rows.size() == 2);
  const std::string csv = plot_csv(rows);
  CHECK(csv.find("1,0.6924,0.8786,0.9326,0.800000") != std::string::npos);
  CHECK(csv.find("2,0.7559,") != std::string::npos);
}

TEST_CASE("example graph with counts 4/10/1") {
  const Graph g = read_graph_file(std::string(QAOAB_TEST_DATA) + "/example_graph.txt");
  REQUIRE(g.is_cubic());
  const Atlas& a1 = fixed_atlas(1);
  const Atlas& a2 = fixed_atlas(2);
  const auto counts = a1.count_subgraphs(g).counts;
  const int tree = a1.tree_index();
  // Remaining p=1 classes: two triangles sort first, single triangle next.
  CHECK(counts[static_cast<size_t>(tree)] == 4);
  CHECK(counts[1] == 10);
  CHECK(counts[0] == 1);

  const auto r1 = lower_bound_fixed_angles(g, 1, a1, fixed_angles(1));
  CHECK(std::fabs(r1.lower_bound - 0.759) < 1e-3);
  const auto r2 = lower_bound_fixed_angles(g, 2, a2, fixed_angles(2));
  CHECK(std::fabs(r2.lower_bound - 0.822) < 1e-3);
  CHECK(std::count_if(r2.counts.counts.begin(), r2.counts.counts.end(), [](int n) { return n > 0; }) == 6);

  // Adding classes in increasing f/c order tightens the bound toward the full value.
  auto term = [&](int k, int n) { return RatioTerm{a1[k].f_fixed, Rational(a1[k].cut.best_cut, a1[k].cut.total_edges), n}; };
  const std::vector<RatioTerm> chain = {term(tree, 4), term(0, 1), term(1, 10)};
  const double b1 = ordering_lower_bound(std::span<const RatioTerm>(chain.data(), 1));
  const double b2 = ordering_lower_bound(std::span<const RatioTerm>(chain.data(), 2));
  const double b3 = ordering_lower_bound(chain);
  CHECK(b1 <= b2);
  CHECK(b2 <= b3);
  CHECK(b3 == doctest::Approx(r1.lower_bound).epsilon(1e-12));
  CHECK(std::fabs(b2 - 0.6981) < 1e-3);
}
