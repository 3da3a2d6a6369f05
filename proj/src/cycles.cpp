#include "qaoab/cycles.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace qaoab {
namespace {

using Bits = std::vector<std::uint64_t>;

struct Candidate {
  int length;
  Cycle vertices;
  Bits edges;
};

class EdgeIds {
 public:
  explicit EdgeIds(const Graph& g) : ids_(static_cast<size_t>(g.vertex_count()), {-1, -1, -1}), g_(g) {
    for (size_t i = 0; i < g.edges().size(); ++i) {
      const Edge e = g.edges()[i];
      set(e.u, e.v, static_cast<int>(i));
      set(e.v, e.u, static_cast<int>(i));
    }
  }
  int operator()(Vertex a, Vertex b) const {
    const auto nb = g_.neighbors(a);
    for (size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] == b) return ids_[static_cast<size_t>(a)][k];
    }
    return -1;
  }

 private:
  void set(Vertex a, Vertex b, int id) {
    const auto nb = g_.neighbors(a);
    for (size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] == b) ids_[static_cast<size_t>(a)][k] = id;
    }
  }
  std::vector<std::array<int, kMaxDegree>> ids_;
  const Graph& g_;
};

// Horton candidates of length at most max_length, sorted by length.
std::vector<Candidate> horton_candidates(const Graph& g, int max_length) {
  const int n = g.vertex_count();
  const size_t words = (static_cast<size_t>(g.edge_count()) + 63) / 64;
  const EdgeIds ids(g);
  std::vector<Candidate> out;
  std::vector<int> dist(static_cast<size_t>(n));
  std::vector<Vertex> parent(static_cast<size_t>(n));
  std::vector<Vertex> branch(static_cast<size_t>(n));
  for (Vertex root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<size_t>(root)] = 0;
    parent[static_cast<size_t>(root)] = -1;
    branch[static_cast<size_t>(root)] = root;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      if (2 * dist[static_cast<size_t>(x)] + 1 > max_length) continue;
      for (const Vertex y : g.neighbors(x)) {
        if (dist[static_cast<size_t>(y)] >= 0) continue;
        dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
        parent[static_cast<size_t>(y)] = x;
        branch[static_cast<size_t>(y)] = (x == root) ? y : branch[static_cast<size_t>(x)];
        queue.push_back(y);
      }
    }
    for (const Edge& e : g.edges()) {
      const int dx = dist[static_cast<size_t>(e.u)];
      const int dy = dist[static_cast<size_t>(e.v)];
      if (dx < 0 || dy < 0) continue;
      if (parent[static_cast<size_t>(e.u)] == e.v || parent[static_cast<size_t>(e.v)] == e.u) continue;
      const int len = dx + dy + 1;
      if (len > max_length) continue;
      // Tree paths must meet only at the root.
      if (e.u != root && e.v != root && branch[static_cast<size_t>(e.u)] == branch[static_cast<size_t>(e.v)]) continue;
      Candidate c{len, {}, Bits(words, 0)};
      auto flip = [&](Vertex a, Vertex b) {
        const int id = ids(a, b);
        c.edges[static_cast<size_t>(id) / 64] ^= std::uint64_t{1} << (id % 64);
      };
      Cycle up;
      for (Vertex x = e.u; x != root; x = parent[static_cast<size_t>(x)]) {
        up.push_back(x);
        flip(x, parent[static_cast<size_t>(x)]);
      }
      c.vertices.push_back(root);
      c.vertices.insert(c.vertices.end(), up.rbegin(), up.rend());
      for (Vertex y = e.v; y != root; y = parent[static_cast<size_t>(y)]) {
        c.vertices.push_back(y);
        flip(y, parent[static_cast<size_t>(y)]);
      }
      flip(e.u, e.v);
      out.push_back(std::move(c));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.length < b.length; });
  return out;
}

// Greedy GF(2) basis selection; returns chosen candidate indices.
std::vector<size_t> select_basis(const std::vector<Candidate>& cands, int rank) {
  std::vector<Bits> rows;
  std::vector<int> pivots;
  std::vector<size_t> chosen;
  for (size_t i = 0; i < cands.size() && static_cast<int>(chosen.size()) < rank; ++i) {
    Bits v = cands[i].edges;
    for (size_t r = 0; r < rows.size(); ++r) {
      const int p = pivots[r];
      if ((v[static_cast<size_t>(p) / 64] >> (p % 64)) & 1U) {
        for (size_t w = 0; w < v.size(); ++w) v[w] ^= rows[r][w];
      }
    }
    int pivot = -1;
    for (size_t w = 0; w < v.size(); ++w) {
      if (v[w] != 0) {
        pivot = static_cast<int>(w * 64) + std::countr_zero(v[w]);
        break;
      }
    }
    if (pivot < 0) continue;
    rows.push_back(std::move(v));
    pivots.push_back(pivot);
    chosen.push_back(i);
  }
  return chosen;
}

}  // namespace

int cycle_rank(const Graph& g) { return g.edge_count() - g.vertex_count() + g.connected_components(); }

std::vector<Cycle> minimum_cycle_basis(const Graph& g) {
  const int rank = cycle_rank(g);
  if (rank == 0) return {};
  const auto cands = horton_candidates(g, g.vertex_count());
  std::vector<Cycle> out;
  for (const size_t i : select_basis(cands, rank)) out.push_back(cands[i].vertices);
  return out;
}

bool cycle_space_spanned_by(const Graph& g, int max_length) {
  const int rank = cycle_rank(g);
  if (rank == 0) return true;
  return static_cast<int>(select_basis(horton_candidates(g, max_length), rank).size()) == rank;
}

int max_basis_cycle_length(const Graph& g) {
  int longest = 0;
  for (const Cycle& c : minimum_cycle_basis(g)) longest = std::max(longest, static_cast<int>(c.size()));
  return longest;
}

int girth(const Graph& g) {
  const auto cands = horton_candidates(g, g.vertex_count());
  return cands.empty() ? 0 : cands.front().length;
}

}  // namespace qaoab
