#pragma once

#include <vector>

#include "qaoab/graph.hpp"

namespace qaoab {

using Cycle = std::vector<Vertex>;

// Minimum-weight cycle basis from Horton's candidate set (one cycle per
// vertex/edge pair through a shortest-path tree), reduced greedily over GF(2).
// Size is |E| - |V| + components.
std::vector<Cycle> minimum_cycle_basis(const Graph& g);

// True when cycles of length <= max_length already span the cycle space,
// i.e. the minimum basis has no longer cycle.
bool cycle_space_spanned_by(const Graph& g, int max_length);

// Length of the longest cycle in a minimum basis; 0 for forests.
int max_basis_cycle_length(const Graph& g);

// Shortest cycle length, or 0 for forests.
int girth(const Graph& g);

int cycle_rank(const Graph& g);

}  // namespace qaoab
