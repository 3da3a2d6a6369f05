#pragma once

#include <cstdint>
#include <vector>

#include "qaoab/angles.hpp"

namespace qaoab {

// Branch-permutation symmetric sector of the depth-p tree subgraph.
//
// A branch of height h is a spin with an unordered pair of height h-1
// branches below it; height 0 is a lone spin. Each center endpoint roots a
// branch of height p, and the full tree is an unordered pair of them. A
// symmetric label stands for the orbit of computational states it covers,
// and amplitudes are stored per computational state, so inner products
// carry the orbit sizes as weights.
struct SymBasis {
  int depth = 0;
  // Branch label counts per height, 2, 6, 42, 1806, ...
  std::vector<std::int64_t> branch_dims;
  // Unordered pairs of height-p branches: 3, 21, 903, 1631721.
  std::int64_t dimension = 0;

  // Per height: spin of each label, orbit size, and its internal cut count.
  std::vector<std::vector<std::uint8_t>> spin;
  std::vector<std::vector<double>> weight;
  std::vector<std::vector<std::uint8_t>> cut;
};

inline constexpr int kMaxSymmetricDepth = 3;

SymBasis build_sym_basis(int p);

// Center-edge expectation of the depth-p tree, computed in the symmetric sector.
double tree_edge_expectation(int p, const Angles& a);

// Evaluator that keeps the basis tables between calls.
class TreeEvaluator {
 public:
  explicit TreeEvaluator(int p);
  int p() const { return basis_.depth; }
  const SymBasis& basis() const { return basis_; }
  double value(const Angles& a) const;
  // Exact adjoint gradient, order (gamma_1..gamma_p, beta_1..beta_p); p <= 2.
  double value_and_gradient(const Angles& a, std::vector<double>& grad) const;
  // Norm of the evolved state in the weighted inner product.
  double evolved_norm(const Angles& a) const;

 private:
  SymBasis basis_;
};

}  // namespace qaoab
