#pragma once

#include <string>
#include <vector>

#include "qaoab/graph.hpp"

namespace qaoab {

// Depth-p edge neighborhood. Center endpoints are vertices 0 and 1; the other
// vertices follow in breadth-first order from the center.
struct RootedSubgraph {
  Graph graph;
  int depth = 0;

  // Distance of each vertex to the nearer center endpoint.
  std::vector<int> center_distances() const;
  // Interior completeness, center edge presence and the radius bound.
  bool valid() const;
};

// Vertices within distance p of either endpoint of e, with every edge that has
// at least one endpoint closer than p (plus the center edge itself). Edges
// joining two vertices at distance exactly p lie outside the light cone.
RootedSubgraph neighborhood_subgraph(const Graph& g, Edge e, int p);

// Isomorphism-class key under maps that fix the center edge setwise.
// Vertex colours are (distance to center, degree).
std::string canonical_key(const RootedSubgraph& s);
std::string canonical_key(const Graph& g, const std::vector<int>& center_distances);

}  // namespace qaoab
