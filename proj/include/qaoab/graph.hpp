#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qaoab {

using Vertex = int;

inline constexpr int kMaxDegree = 3;

// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph with maximum degree 3. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Throws DomainError on self-loops, duplicate edges, out-of-range
  // endpoints or a vertex of degree above 3.
  Graph(int vertex_count, std::span<const Edge> edges);
  Graph(int vertex_count, std::initializer_list<std::pair<int, int>> edges);

  int vertex_count() const { return static_cast<int>(degree_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_[static_cast<size_t>(v)].data(), static_cast<size_t>(degree_[static_cast<size_t>(v)])};
  }
  int degree(Vertex v) const { return degree_[static_cast<size_t>(v)]; }
  bool has_edge(Vertex a, Vertex b) const;
  std::optional<int> edge_index(Vertex a, Vertex b) const;

  // Every vertex has degree exactly 3.
  bool is_cubic() const;
  // First vertex whose degree differs from 3, if any.
  std::optional<Vertex> deficient_vertex() const;

  // Per-vertex adjacency bitmasks; requires vertex_count() <= 64.
  std::vector<std::uint64_t> adjacency_masks() const;

  // Breadth-first distances from a set of sources; unreachable vertices get -1.
  std::vector<int> distances_from(std::span<const Vertex> sources) const;

  int connected_components() const;

  // Relabels vertex v to perm[v]. perm must be a permutation of 0..n-1.
  Graph relabeled(std::span<const int> perm) const;

  // Same edge set, compared independently of insertion order.
  bool same_edges(const Graph& other) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::array<Vertex, kMaxDegree>> adjacency_;
  std::vector<int> degree_;
};

// Edge-list text: one "u v" pair per line, '#' comments, vertex count is
// one more than the largest index.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);
// Edges sorted lexicographically, one per line.
std::string serialize_graph(const Graph& g);

}  // namespace qaoab
