#include "qaoab/named_graphs.hpp"

#include <algorithm>
#include <set>

#include "qaoab/errors.hpp"

namespace qaoab {

Graph lcf_graph(int n, const std::vector<int>& shifts) {
  std::set<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace(i, (i + 1) % n);
    const int s = shifts[static_cast<size_t>(i) % shifts.size()];
    edges.emplace(i, ((i + s) % n + n) % n);
  }
  return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

Graph generalized_petersen(int n, int k) {
  std::set<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace(i, (i + 1) % n);
    edges.emplace(i, n + i);
    edges.emplace(n + i, n + (i + k) % n);
  }
  return Graph(2 * n, std::vector<Edge>(edges.begin(), edges.end()));
}

Graph complete_k4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Graph prism_graph(int n) { return generalized_petersen(n, 1); }
Graph cube_graph() { return prism_graph(4); }
Graph petersen_graph() { return generalized_petersen(5, 2); }
Graph heawood_graph() { return lcf_graph(14, {5, -5}); }
Graph mcgee_graph() { return lcf_graph(24, {12, 7, -7}); }
Graph dodecahedron_graph() { return generalized_petersen(10, 2); }
Graph mobius_kantor_graph() { return generalized_petersen(8, 3); }

Graph random_cubic_graph(int n, std::mt19937_64& rng) {
  if (n < 4 || n % 2 != 0) throw DomainError("random cubic graphs need an even vertex count >= 4");
  std::vector<int> points(static_cast<size_t>(3 * n));
  for (int i = 0; i < 3 * n; ++i) points[static_cast<size_t>(i)] = i / 3;
  for (;;) {
    std::shuffle(points.begin(), points.end(), rng);
    std::set<Edge> edges;
    bool simple = true;
    for (size_t i = 0; i < points.size() && simple; i += 2) {
      const int a = points[i];
      const int b = points[i + 1];
      simple = a != b && edges.emplace(a, b).second;
    }
    if (simple) return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
  }
}

}  // namespace qaoab
