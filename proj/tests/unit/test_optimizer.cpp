#include <cmath>

#include "doctest.h"
#include "qaoab/atlas.hpp"
#include "qaoab/atlas_build.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/optimizer.hpp"

using namespace qaoab;

namespace {

double grad_norm(Objective& f, const Angles& a) {
  std::vector<double> g;
  f.value_and_gradient(a, g);
  double s = 0;
  for (const double x : g) s += x * x;
  return std::sqrt(s);
}

bool near_any(const Angles& a, const std::vector<Angles>& refs, double tol_deg) {
  for (const Angles& r : refs) {
    if (torus_distance(a, r.reduced()) <= deg_to_rad(tol_deg)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("fixed angles are tree maxima") {
  for (int p = 1; p <= 2; ++p) {
    TreeObjective tree(p);
    CHECK(grad_norm(tree, fixed_angles(p)) < 1e-4);
  }
  CHECK(TreeObjective(1).value(fixed_angles(1)) == doctest::Approx(0.6924).epsilon(5e-4));
  CHECK(TreeObjective(2).value(fixed_angles(2)) == doctest::Approx(0.7559).epsilon(5e-4));
  CHECK(fixed_angles(0).p() == 0);
  CHECK_THROWS_AS(fixed_angles(3), DomainError);
}

TEST_CASE("tree objective gradient") {
  TreeObjective tree(2);
  const Angles a({0.4, -1.3}, {0.2, 0.6});
  std::vector<double> g;
  tree.value_and_gradient(a, g);
  auto x = a.flat();
  for (size_t k = 0; k < x.size(); ++k) {
    auto up = x;
    auto dn = x;
    up[k] += 1e-5;
    dn[k] -= 1e-5;
    const double fd = (tree.value(Angles::from_flat(up)) - tree.value(Angles::from_flat(dn))) / 2e-5;
    CHECK(std::fabs(fd - g[k]) < 1e-6);
  }
}

TEST_CASE("gradient ascent") {
  TreeObjective tree(1);
  const auto r = gradient_ascent(tree, Angles::from_degrees({10}, {10}));
  CHECK(std::fabs(r.value - 0.6924) < 1e-4);
  CHECK(r.gradient_norm < 1e-4);
  CHECK(r.angles.gammas[0] >= -kPi);
  CHECK(r.angles.gammas[0] < kPi);

  AscentOptions tight;
  tight.max_steps = 3;
  CHECK_THROWS_AS(gradient_ascent(tree, Angles::from_degrees({10}, {10}), tight), ConvergenceError);
  CHECK_THROWS_AS(gradient_ascent(tree, Angles({NAN}, {0.0})), DomainError);
}

TEST_CASE("ascent never lowers the objective") {
  // Tracks values through a wrapper objective.
  struct Recording : Objective {
    TreeObjective inner{1};
    std::vector<double> seen;
    int p() const override { return 1; }
    double value(const Angles& a) override { return inner.value(a); }
    double value_and_gradient(const Angles& a, std::vector<double>& g) override {
      seen.push_back(inner.value_and_gradient(a, g));
      return seen.back();
    }
    std::unique_ptr<Objective> clone() const override { return std::make_unique<Recording>(); }
  } rec;
  const auto r = gradient_ascent(rec, Angles::from_degrees({-170}, {40}));
  CHECK(r.value == doctest::Approx(0.6924).epsilon(1e-3));
  // Accepted values are those not followed by a rejection; the final sequence of
  // accepted values is non-decreasing when rejections are dropped.
  double last = rec.seen.front();
  int drops = 0;
  for (size_t i = 1; i < rec.seen.size(); ++i) {
    if (rec.seen[i] < last - 1e-12) {
      ++drops;
    } else {
      last = rec.seen[i];
    }
  }
  CHECK(drops == r.backtracks);
}

TEST_CASE("single-layer tree maxima") {
  const auto maxima = find_all_maxima(TreeObjective(1), 6);
  REQUIRE(maxima.size() == 4);
  const std::vector<Angles> refs = {Angles::from_degrees({35.3}, {22.5}), Angles::from_degrees({144.7}, {22.5}),
                                    Angles::from_degrees({-35.3}, {-22.5}), Angles::from_degrees({-144.7}, {-22.5})};
  for (const auto& m : maxima) {
    CHECK(near_any(m.angles, refs, 1.0));
    CHECK(std::fabs(m.value - maxima.front().value) < 1e-6);
    TreeObjective tree(1);
    CHECK(grad_norm(tree, m.angles) < 1e-4);
  }

  SUBCASE("every class takes one value at all four maxima") {
    const Atlas atlas = make_atlas_skeleton(1);
    for (const auto& e : atlas.entries()) {
      SubgraphObjective f(e.subgraph.graph, 1);
      const double ref = f.value(maxima.front().angles);
      for (const auto& m : maxima) CHECK(std::fabs(f.value(m.angles) - ref) < 1e-6);
    }
  }
}

TEST_CASE("cluster maxima") {
  const Angles a = Angles::from_degrees({10}, {10});
  const Angles near = Angles::from_degrees({10.2 + 360}, {10.1 + 90});
  const Angles far = Angles::from_degrees({50}, {10});
  const auto c = cluster_maxima({{a, 0.7}, {near.reduced(), 0.70001}, {far, 0.6}}, deg_to_rad(0.5), 1e-4);
  REQUIRE(c.size() == 1);
  CHECK(c.front().value == doctest::Approx(0.70001));
}

TEST_CASE("multistart") {
  const Atlas atlas = make_atlas_skeleton(1);
  MultistartOptions opts;
  opts.threads = 2;
  const auto two_tri = multistart(SubgraphObjective(atlas[0].subgraph.graph, 1), opts);
  CHECK(two_tri.converged);
  CHECK(two_tri.starts_used == 25);
  CHECK(std::fabs(two_tri.best_value - 0.6163) < 5e-4);

  const auto again = multistart(SubgraphObjective(atlas[0].subgraph.graph, 1), opts);
  CHECK(again.best_value == two_tri.best_value);

  opts.starts = 0;
  CHECK_THROWS_AS(multistart(TreeObjective(1), opts), DomainError);
  CHECK_THROWS_AS(find_all_maxima(TreeObjective(1), 3), DomainError);
}

TEST_CASE("two-layer optimized values") {
  Atlas atlas = make_atlas_skeleton(2);
  AtlasBuildOptions opts;
  opts.optimize = false;
  fill_atlas_values(atlas, opts);
  // The class published as row 7: cut fraction 6/7, fixed value 0.4258.
  const AtlasEntry* row7 = nullptr;
  for (const auto& e : atlas.entries()) {
    if (e.cut.best_cut * 7 == e.cut.total_edges * 6 && std::fabs(e.f_fixed - 0.4258) < 5e-4) row7 = &e;
  }
  REQUIRE(row7 != nullptr);
  const auto best = multistart(SubgraphObjective(row7->subgraph.graph, 2));
  CHECK(std::fabs(best.best_value - 0.7492) < 1e-3);
  SubgraphObjective f(row7->subgraph.graph, 2);
  CHECK(grad_norm(f, best.best_angles) < 1e-4);
}
