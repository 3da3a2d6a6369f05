#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qaoab/graph.hpp"

namespace qaoab {

// Canonical labeling of a vertex-coloured graph with at most 64 vertices.
//
// Vertices start partitioned by colour (ascending); the partition is refined
// to the coarsest equitable one and the search individualizes vertices of the
// first smallest non-singleton cell. Leaves are compared by their permuted
// adjacency matrix and the lexicographically smallest wins. Automorphisms
// found at equal leaves prune sibling branches in the same orbit.
struct CanonicalForm {
  // order[k] is the original vertex placed at canonical position k.
  std::vector<int> order;
  // position[v] is the canonical position of original vertex v.
  std::vector<int> position;
  // Vertex count, colour sequence and packed upper-triangular adjacency.
  std::string key;
};

// colors[v] must lie in [0, 255].
CanonicalForm canonical_form(const Graph& g, std::span<const int> colors);
// Same, from per-vertex adjacency bitmasks.
CanonicalForm canonical_form(std::span<const std::uint64_t> adj, std::span<const int> colors);

std::string to_hex(std::string_view bytes);
std::string from_hex(std::string_view hex);

}  // namespace qaoab
