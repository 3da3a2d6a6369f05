#include "qaoab/subgraph.hpp"

#include <deque>

#include "qaoab/canonical.hpp"
#include "qaoab/errors.hpp"

namespace qaoab {

std::vector<int> RootedSubgraph::center_distances() const {
  const Vertex center[] = {0, 1};
  if (graph.vertex_count() < 2) return std::vector<int>(static_cast<size_t>(graph.vertex_count()), 0);
  return graph.distances_from(center);
}

bool RootedSubgraph::valid() const {
  if (graph.vertex_count() < 2 || !graph.has_edge(0, 1)) return false;
  const auto dist = center_distances();
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const int d = dist[static_cast<size_t>(v)];
    if (d < 0 || d > depth) return false;
    if (d < depth && graph.degree(v) != kMaxDegree) return false;
  }
  return true;
}

RootedSubgraph neighborhood_subgraph(const Graph& g, Edge e, int p) {
  if (p < 0) throw DomainError("depth must be non-negative");
  if (!g.has_edge(e.u, e.v)) {
    throw DomainError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in graph");
  }
  const auto n = static_cast<size_t>(g.vertex_count());
  std::vector<int> dist(n, -1);
  std::vector<int> label(n, -1);
  std::vector<Vertex> order;
  std::deque<Vertex> queue;
  for (const Vertex c : {e.u, e.v}) {
    dist[static_cast<size_t>(c)] = 0;
    label[static_cast<size_t>(c)] = static_cast<int>(order.size());
    order.push_back(c);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (dist[static_cast<size_t>(x)] == p) continue;
    for (const Vertex y : g.neighbors(x)) {
      if (dist[static_cast<size_t>(y)] >= 0) continue;
      dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
      label[static_cast<size_t>(y)] = static_cast<int>(order.size());
      order.push_back(y);
      queue.push_back(y);
    }
  }
  std::vector<Edge> edges;
  edges.emplace_back(0, 1);
  for (const Vertex x : order) {
    for (const Vertex y : g.neighbors(x)) {
      const int lx = label[static_cast<size_t>(x)];
      const int ly = label[static_cast<size_t>(y)];
      if (ly < 0 || lx >= ly || (lx == 0 && ly == 1)) continue;
      if (dist[static_cast<size_t>(x)] < p || dist[static_cast<size_t>(y)] < p) edges.emplace_back(lx, ly);
    }
  }
  return RootedSubgraph{Graph(static_cast<int>(order.size()), edges), p};
}

std::string canonical_key(const Graph& g, const std::vector<int>& center_distances) {
  std::vector<int> colors(static_cast<size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) {
    colors[static_cast<size_t>(v)] = center_distances[static_cast<size_t>(v)] * 4 + g.degree(v);
  }
  return canonical_form(g, colors).key;
}

std::string canonical_key(const RootedSubgraph& s) { return canonical_key(s.graph, s.center_distances()); }

}  // namespace qaoab
