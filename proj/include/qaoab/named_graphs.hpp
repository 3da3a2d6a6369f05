#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qaoab/graph.hpp"

namespace qaoab {

// Hamiltonian cubic graph from LCF notation; shifts repeat around an n-cycle.
Graph lcf_graph(int n, const std::vector<int>& shifts);
// Outer n-cycle, inner star polygon {n/k}, spokes between them.
Graph generalized_petersen(int n, int k);

Graph complete_k4();
Graph prism_graph(int n);
Graph cube_graph();
Graph petersen_graph();
Graph heawood_graph();
Graph mcgee_graph();
Graph dodecahedron_graph();
Graph mobius_kantor_graph();

// Uniform pairing-model sample conditioned on simplicity; n must be even, n >= 4.
Graph random_cubic_graph(int n, std::mt19937_64& rng);

}  // namespace qaoab
