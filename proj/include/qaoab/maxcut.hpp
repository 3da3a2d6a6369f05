#pragma once

#include <vector>

#include "qaoab/graph.hpp"

namespace qaoab {

struct CutResult {
  int best_cut = 0;
  int total_edges = 0;
  // +1 / -1 per vertex.
  std::vector<int> witness;
};

inline constexpr int kMaxCutVertexLimit = 32;

// Exhaustive Gray-code search with vertex 0 pinned to +1.
CutResult max_cut_brute(const Graph& g);

int cut_value(const Graph& g, const std::vector<int>& spins);

}  // namespace qaoab
