#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qaoab/angles.hpp"
#include "qaoab/graph.hpp"
#include "qaoab/subgraph.hpp"

namespace qaoab {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 24;

// Dense amplitudes; bit q of the basis index is qubit q (1 means spin down).
struct Statevector {
  int qubit_count = 0;
  std::vector<Complex> amplitudes;

  double norm() const;
};

Statevector prepare_plus(int n);

// Cut value C(z) for every basis index.
std::vector<std::uint8_t> cut_table(const Graph& g);

// Multiplies amplitude z by exp(-i gamma C(z)).
void apply_cost_phase(Statevector& state, const Graph& g, double gamma);
void apply_cost_phase(Statevector& state, const std::vector<std::uint8_t>& table, double gamma);
// exp(-i beta X) on every qubit.
void apply_mixer(Statevector& state, double beta);

// <Z_a Z_b>.
double zz_expectation(const Statevector& state, int a, int b);

// Center-edge cut probability on the subgraph, 1/2 (1 - <Z0 Z1>).
double edge_expectation(const RootedSubgraph& s, const Angles& a);
// d f / d (gamma_1..gamma_p, beta_1..beta_p).
std::vector<double> edge_expectation_gradient(const RootedSubgraph& s, const Angles& a);

// Whole-graph simulation without truncation. Returns f for every edge of g,
// in g.edges() order.
std::vector<double> full_graph_edge_expectations(const Graph& g, const Angles& a);
double embedded_edge_expectation_full(const Graph& g, Edge e, const Angles& a);

// Reusable evaluator for one subgraph. Works in the spin-flip symmetric
// sector: the ansatz commutes with the global flip, so only amplitudes with
// the highest qubit up are stored.
class EdgeEvaluator {
 public:
  explicit EdgeEvaluator(const Graph& g);

  int qubit_count() const { return n_; }
  double value(const Angles& a);
  // Returns f and fills grad (size 2p).
  double value_and_gradient(const Angles& a, std::vector<double>& grad);

 private:
  void evolve(const Angles& a);
  void mix(std::vector<Complex>& v, double beta) const;
  void phase(std::vector<Complex>& v, double gamma) const;
  // Re <x| -i B |y> and Re <x| -i C |y>, over the half space.
  double re_minus_i_b(const std::vector<Complex>& x, const std::vector<Complex>& y) const;
  double re_minus_i_c(const std::vector<Complex>& x, const std::vector<Complex>& y) const;
  double zz_half(const std::vector<Complex>& v) const;

  int n_ = 0;
  int edges_ = 0;
  std::size_t half_ = 0;
  std::vector<std::uint8_t> cut_;
  std::vector<Complex> psi_;
  std::vector<Complex> lambda_;
  std::vector<Complex> phases_;
};

}  // namespace qaoab
