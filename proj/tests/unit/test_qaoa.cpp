#include <cmath>
#include <random>

#include "doctest.h"
#include "qaoab/atlas.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/named_graphs.hpp"
#include "qaoab/qaoa.hpp"

using namespace qaoab;

namespace {

Angles random_angles(int p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::vector<double> g, b;
  for (int k = 0; k < p; ++k) {
    g.push_back(u(rng));
    b.push_back(u(rng) / 2);
  }
  return Angles(g, b);
}

const Angles kP1Fixed = Angles::from_degrees({35.3}, {22.5});
const Angles kP2Fixed = Angles::from_degrees({28.0, 51.4}, {31.8, 16.8});

}  // namespace

TEST_CASE("plus state and gates") {
  const auto s1 = prepare_plus(1);
  CHECK(s1.amplitudes[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
  const auto s2 = prepare_plus(2);
  for (const auto& a : s2.amplitudes) CHECK(a.real() == doctest::Approx(0.5));
  CHECK(prepare_plus(14).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(prepare_plus(25), CapacityError);
  CHECK_THROWS_AS(prepare_plus(0), CapacityError);

  const Graph edge(2, {{0, 1}});
  Statevector basis;
  basis.qubit_count = 2;
  basis.amplitudes = {0, 1, 0, 0};  // |01>
  apply_cost_phase(basis, edge, 0.7);
  CHECK(std::abs(basis.amplitudes[1] - std::polar(1.0, -0.7)) < 1e-14);
  basis.amplitudes = {1, 0, 0, 0};
  apply_cost_phase(basis, edge, 0.7);
  CHECK(std::abs(basis.amplitudes[0] - Complex(1, 0)) < 1e-14);

  std::mt19937_64 rng(3);
  const Graph pet = petersen_graph();
  Statevector psi = prepare_plus(10);
  apply_mixer(psi, 0.3);
  apply_cost_phase(psi, pet, 1.1);
  const auto before = psi.amplitudes;
  apply_cost_phase(psi, pet, 0.0);
  apply_mixer(psi, 0.0);
  for (size_t i = 0; i < before.size(); ++i) CHECK(std::abs(psi.amplitudes[i] - before[i]) < 1e-15);
  apply_cost_phase(psi, pet, 0.4);
  apply_cost_phase(psi, pet, -0.4);
  apply_mixer(psi, 0.2);
  apply_mixer(psi, 0.5);
  Statevector other;
  other.qubit_count = 10;
  other.amplitudes = before;
  apply_mixer(other, 0.7);
  for (size_t i = 0; i < before.size(); ++i) CHECK(std::abs(psi.amplitudes[i] - other.amplitudes[i]) < 1e-12);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // |+> is a B eigenstate, so beta = pi/2 only adds a global phase.
  Statevector plus = prepare_plus(5);
  apply_mixer(plus, kPi / 2);
  const Complex ratio = plus.amplitudes[0] / prepare_plus(5).amplitudes[0];
  for (const auto& a : plus.amplitudes) CHECK(std::abs(a - ratio * prepare_plus(5).amplitudes[0]) < 1e-12);
}

TEST_CASE("published single-layer values") {
  const Atlas a1 = make_atlas_skeleton(1);
  std::vector<double> f;
  for (const auto& e : a1.entries()) f.push_back(edge_expectation(e.subgraph, kP1Fixed));
  // Ascending vertex count: two triangles, single triangle, tree.
  CHECK(std::fabs(f[2] - 0.6924) < 5e-4);
  CHECK(std::fabs(f[1] - 0.6369) < 5e-4);
  CHECK(std::fabs(f[0] - 0.5813) < 5e-4);
  for (const auto& e : a1.entries()) CHECK(edge_expectation(e.subgraph, Angles({0.0}, {0.0})) == doctest::Approx(0.5));
}

TEST_CASE("two-layer tree value") {
  const auto tree = neighborhood_subgraph(heawood_graph(), Edge(0, 1), 2);
  CHECK(std::fabs(edge_expectation(tree, kP2Fixed) - 0.7559) < 5e-4);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(5);
  const Atlas a2 = make_atlas_skeleton(2);
  for (int t = 0; t < 40; ++t) {
    const auto& s = a2[static_cast<int>(rng() % 123)].subgraph;
    const int p = 1 + t % 2;
    const Angles a = random_angles(p, rng);
    const auto grad = edge_expectation_gradient(s, a);
    const auto flat = a.flat();
    for (size_t k = 0; k < flat.size(); ++k) {
      auto up = flat, dn = flat;
      up[k] += 1e-5;
      dn[k] -= 1e-5;
      const double fd = (edge_expectation(s, Angles::from_flat(up)) - edge_expectation(s, Angles::from_flat(dn))) / 2e-5;
      CHECK(std::fabs(grad[k] - fd) < 1e-6);
    }
  }
  // Stationary along beta when every gamma vanishes.
  const auto g0 = edge_expectation_gradient(a2[5].subgraph, Angles({0.0, 0.0}, {0.3, -0.2}));
  CHECK(std::fabs(g0[2]) < 1e-14);
  CHECK(std::fabs(g0[3]) < 1e-14);
}

TEST_CASE("truncated and full-graph values agree") {
  std::mt19937_64 rng(9);
  const Atlas a1 = make_atlas_skeleton(1);
  const Atlas a2 = make_atlas_skeleton(2);
  for (const Graph& g : {cube_graph(), petersen_graph(), random_cubic_graph(12, rng)}) {
    for (int p = 1; p <= 2; ++p) {
      const Angles a = random_angles(p, rng);
      const auto full = full_graph_edge_expectations(g, a);
      const Atlas& atlas = p == 1 ? a1 : a2;
      for (size_t i = 0; i < g.edges().size(); ++i) {
        const int k = atlas.classify_edge(g, g.edges()[i]);
        CHECK(std::fabs(full[i] - edge_expectation(atlas[k].subgraph, a)) < 1e-10);
      }
    }
  }
  const Graph single(2, {{0, 1}});
  const Angles a = random_angles(2, rng);
  CHECK(std::fabs(embedded_edge_expectation_full(single, Edge(0, 1), a) -
                  edge_expectation(RootedSubgraph{single, 2}, a)) < 1e-12);
}

TEST_CASE("periodicity") {
  std::mt19937_64 rng(13);
  const Atlas a2 = make_atlas_skeleton(2);
  for (int t = 0; t < 20; ++t) {
    const auto& s = a2[static_cast<int>(rng() % 123)].subgraph;
    const Angles a = random_angles(2, rng);
    const double f = edge_expectation(s, a);
    Angles shifted = a;
    shifted.betas[t % 2] += kPi / 2;
    CHECK(std::fabs(edge_expectation(s, shifted) - f) < 1e-12);
    shifted = a;
    shifted.gammas[t % 2] += 2 * kPi;
    CHECK(std::fabs(edge_expectation(s, shifted) - f) < 1e-12);
    CHECK(std::fabs(edge_expectation(s, a.reduced()) - f) < 1e-12);
    CHECK(std::fabs(edge_expectation(s, a.negated()) - f) < 1e-12);
  }
}
