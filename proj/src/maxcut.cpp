#include "qaoab/maxcut.hpp"

#include <bit>

#include "qaoab/errors.hpp"

namespace qaoab {

int cut_value(const Graph& g, const std::vector<int>& spins) {
  int cut = 0;
  for (const Edge& e : g.edges()) {
    if (spins[static_cast<size_t>(e.u)] != spins[static_cast<size_t>(e.v)]) ++cut;
  }
  return cut;
}

CutResult max_cut_brute(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kMaxCutVertexLimit) {
    throw CapacityError("brute-force max cut supports at most " + std::to_string(kMaxCutVertexLimit) + " vertices");
  }
  CutResult out;
  out.total_edges = g.edge_count();
  out.witness.assign(static_cast<size_t>(n), 1);
  if (n <= 1) return out;

  const auto adj = g.adjacency_masks();
  std::uint64_t side = 0;
  int cut = 0;
  std::uint64_t best_side = 0;
  int best = 0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 1; k < steps; ++k) {
    // Gray code flips bit countr_zero(k) of the free vertices 1..n-1.
    const int v = std::countr_zero(k) + 1;
    const std::uint64_t m = adj[static_cast<size_t>(v)];
    const bool on = (side >> v) & 1U;
    const int same = std::popcount(on ? (m & side) : (m & ~side));
    cut += 2 * same - g.degree(v);
    side ^= std::uint64_t{1} << v;
    if (cut > best) {
      best = cut;
      best_side = side;
    }
  }
  out.best_cut = best;
  for (int v = 0; v < n; ++v) out.witness[static_cast<size_t>(v)] = ((best_side >> v) & 1U) ? -1 : 1;
  return out;
}

}  // namespace qaoab
