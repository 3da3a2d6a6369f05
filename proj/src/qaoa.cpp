#include "qaoab/qaoa.hpp"

#include <bit>
#include <cmath>

#include "qaoab/errors.hpp"

namespace qaoab {
namespace {

void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw CapacityError("dense simulation supports 1 to " + std::to_string(kMaxQubits) + " qubits, got " +
                        std::to_string(n));
  }
}

// exp(-i beta X) on the pair (a, b).
inline void rotate_pair(Complex& a, Complex& b, double c, double s) {
  const double ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
  a = Complex(c * ar + s * bi, c * ai - s * br);
  b = Complex(c * br + s * ai, c * bi - s * ar);
}

std::vector<Complex> phase_table(int max_cut, double gamma) {
  std::vector<Complex> out(static_cast<size_t>(max_cut) + 1);
  for (int k = 0; k <= max_cut; ++k) out[static_cast<size_t>(k)] = std::polar(1.0, -gamma * k);
  return out;
}

inline Complex times(const Complex& x, const Complex& y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

}  // namespace

double Statevector::norm() const {
  double s = 0;
  for (const Complex& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

Statevector prepare_plus(int n) {
  check_qubits(n);
  Statevector s;
  s.qubit_count = n;
  s.amplitudes.assign(std::size_t{1} << n, Complex(std::pow(2.0, -0.5 * n), 0.0));
  return s;
}

std::vector<std::uint8_t> cut_table(const Graph& g) {
  const int n = g.vertex_count();
  check_qubits(n);
  std::vector<std::uint8_t> table(std::size_t{1} << n, 0);
  for (std::size_t z = 0; z < table.size(); ++z) {
    int c = 0;
    for (const Edge& e : g.edges()) c += static_cast<int>(((z >> e.u) ^ (z >> e.v)) & 1U);
    table[z] = static_cast<std::uint8_t>(c);
  }
  return table;
}

void apply_cost_phase(Statevector& state, const std::vector<std::uint8_t>& table, double gamma) {
  if (table.size() != state.amplitudes.size()) throw DomainError("cost table does not match the state dimension");
  int max_cut = 0;
  for (const auto c : table) max_cut = std::max(max_cut, static_cast<int>(c));
  const auto ph = phase_table(max_cut, gamma);
  for (std::size_t z = 0; z < table.size(); ++z) state.amplitudes[z] = times(state.amplitudes[z], ph[table[z]]);
}

void apply_cost_phase(Statevector& state, const Graph& g, double gamma) {
  if (g.vertex_count() != state.qubit_count) throw DomainError("graph and state sizes differ");
  apply_cost_phase(state, cut_table(g), gamma);
}

void apply_mixer(Statevector& state, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  auto& a = state.amplitudes;
  for (int q = 0; q < state.qubit_count; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) rotate_pair(a[i], a[i + stride], c, s);
    }
  }
}

double zz_expectation(const Statevector& state, int a, int b) {
  double s = 0;
  for (std::size_t z = 0; z < state.amplitudes.size(); ++z) {
    const double w = std::norm(state.amplitudes[z]);
    s += (((z >> a) ^ (z >> b)) & 1U) ? -w : w;
  }
  return s;
}

std::vector<double> full_graph_edge_expectations(const Graph& g, const Angles& a) {
  Statevector psi = prepare_plus(g.vertex_count());
  const auto table = cut_table(g);
  for (int k = 0; k < a.p(); ++k) {
    apply_cost_phase(psi, table, a.gammas[static_cast<size_t>(k)]);
    apply_mixer(psi, a.betas[static_cast<size_t>(k)]);
  }
  std::vector<double> out;
  for (const Edge& e : g.edges()) out.push_back(0.5 * (1.0 - zz_expectation(psi, e.u, e.v)));
  return out;
}

double embedded_edge_expectation_full(const Graph& g, Edge e, const Angles& a) {
  const auto idx = g.edge_index(e.u, e.v);
  if (!idx) throw DomainError("edge not in graph");
  return full_graph_edge_expectations(g, a)[static_cast<size_t>(*idx)];
}

EdgeEvaluator::EdgeEvaluator(const Graph& g) : n_(g.vertex_count()), edges_(g.edge_count()) {
  check_qubits(n_);
  if (n_ < 2 || !g.has_edge(0, 1)) throw DomainError("evaluator needs a center edge between vertices 0 and 1");
  half_ = std::size_t{1} << (n_ - 1);
  cut_.assign(half_, 0);
  for (std::size_t z = 0; z < half_; ++z) {
    int c = 0;
    for (const Edge& e : g.edges()) c += static_cast<int>(((z >> e.u) ^ (z >> e.v)) & 1U);
    cut_[z] = static_cast<std::uint8_t>(c);
  }
  psi_.resize(half_);
  lambda_.resize(half_);
}

void EdgeEvaluator::mix(std::vector<Complex>& v, double beta) const {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  for (int q = 0; q + 1 < n_; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < half_; base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) rotate_pair(v[i], v[i + stride], c, s);
    }
  }
  // The top qubit pairs z with the flip of its partner, i.e. i with i ^ low.
  const std::size_t low = half_ - 1;
  for (std::size_t i = 0; i < half_ / 2; ++i) rotate_pair(v[i], v[i ^ low], c, s);
}

void EdgeEvaluator::phase(std::vector<Complex>& v, double gamma) const {
  const auto ph = phase_table(edges_, gamma);
  for (std::size_t i = 0; i < half_; ++i) v[i] = times(v[i], ph[cut_[i]]);
}

double EdgeEvaluator::zz_half(const std::vector<Complex>& v) const {
  double s = 0;
  for (std::size_t i = 0; i < half_; ++i) {
    const double w = std::norm(v[i]);
    s += ((i ^ (i >> 1)) & 1U) ? -w : w;
  }
  return 2 * s;
}

double EdgeEvaluator::re_minus_i_b(const std::vector<Complex>& x, const std::vector<Complex>& y) const {
  const std::size_t low = half_ - 1;
  double s = 0;
  for (std::size_t i = 0; i < half_; ++i) {
    Complex w = y[i ^ low];
    for (int q = 0; q + 1 < n_; ++q) w += y[i ^ (std::size_t{1} << q)];
    s += x[i].real() * w.imag() - x[i].imag() * w.real();
  }
  return 2 * s;
}

double EdgeEvaluator::re_minus_i_c(const std::vector<Complex>& x, const std::vector<Complex>& y) const {
  double s = 0;
  for (std::size_t i = 0; i < half_; ++i) {
    s += cut_[i] * (x[i].real() * y[i].imag() - x[i].imag() * y[i].real());
  }
  return 2 * s;
}

void EdgeEvaluator::evolve(const Angles& a) {
  const Complex amp(std::pow(2.0, -0.5 * n_), 0.0);
  std::fill(psi_.begin(), psi_.end(), amp);
  for (int k = 0; k < a.p(); ++k) {
    phase(psi_, a.gammas[static_cast<size_t>(k)]);
    mix(psi_, a.betas[static_cast<size_t>(k)]);
  }
}

double EdgeEvaluator::value(const Angles& a) {
  evolve(a);
  return 0.5 * (1.0 - zz_half(psi_));
}

double EdgeEvaluator::value_and_gradient(const Angles& a, std::vector<double>& grad) {
  evolve(a);
  const double f = 0.5 * (1.0 - zz_half(psi_));
  const int p = a.p();
  grad.assign(static_cast<size_t>(2 * p), 0.0);
  for (std::size_t i = 0; i < half_; ++i) lambda_[i] = ((i ^ (i >> 1)) & 1U) ? -psi_[i] : psi_[i];
  for (int k = p - 1; k >= 0; --k) {
    const double beta = a.betas[static_cast<size_t>(k)];
    const double gamma = a.gammas[static_cast<size_t>(k)];
    grad[static_cast<size_t>(p + k)] = -re_minus_i_b(lambda_, psi_);
    mix(psi_, -beta);
    mix(lambda_, -beta);
    grad[static_cast<size_t>(k)] = -re_minus_i_c(lambda_, psi_);
    if (k > 0) {
      phase(psi_, -gamma);
      phase(lambda_, -gamma);
    }
  }
  return f;
}

double edge_expectation(const RootedSubgraph& s, const Angles& a) { return EdgeEvaluator(s.graph).value(a); }

std::vector<double> edge_expectation_gradient(const RootedSubgraph& s, const Angles& a) {
  std::vector<double> grad;
  EdgeEvaluator(s.graph).value_and_gradient(a, grad);
  return grad;
}

}  // namespace qaoab
