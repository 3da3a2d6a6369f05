#include <algorithm>
#include <bit>
#include <random>
#include <unordered_set>

#include "qaoab/atlas.hpp"
#include "qaoab/canonical.hpp"
#include "qaoab/errors.hpp"

namespace qaoab {
namespace {

struct State {
  std::vector<std::uint64_t> adj;
  std::vector<int> dist;
};

std::string state_key(const State& s) {
  std::vector<int> colors(s.adj.size());
  for (size_t v = 0; v < s.adj.size(); ++v) colors[v] = s.dist[v] * 4 + std::popcount(s.adj[v]);
  return canonical_form(s.adj, colors).key;
}

State from_subgraph(const RootedSubgraph& r) {
  State s{r.graph.adjacency_masks(), r.center_distances()};
  return s;
}

int degree(const State& s, size_t v) { return std::popcount(s.adj[v]); }

// First vertex at distance p-1 still short of degree 3.
std::optional<size_t> open_vertex(const State& s, int p) {
  for (size_t v = 0; v < s.adj.size(); ++v) {
    if (s.dist[v] == p - 1 && degree(s, v) < kMaxDegree) return v;
  }
  return std::nullopt;
}

void add_edge(State& s, size_t a, size_t b) {
  s.adj[a] |= std::uint64_t{1} << b;
  s.adj[b] |= std::uint64_t{1} << a;
}

std::vector<State> successors(const State& s, size_t v, int p) {
  std::vector<State> out;
  for (size_t w = 0; w < s.adj.size(); ++w) {
    if (w == v || ((s.adj[v] >> w) & 1U) || degree(s, w) >= kMaxDegree) continue;
    if (s.dist[w] != p - 1 && s.dist[w] != p) continue;
    State t = s;
    add_edge(t, v, w);
    out.push_back(std::move(t));
  }
  if (s.adj.size() < 64) {
    State t = s;
    t.adj.push_back(0);
    t.dist.push_back(p);
    add_edge(t, v, t.adj.size() - 1);
    out.push_back(std::move(t));
  }
  return out;
}

Graph to_graph(const State& s) {
  std::vector<Edge> edges;
  for (size_t a = 0; a < s.adj.size(); ++a) {
    for (std::uint64_t rest = s.adj[a] >> a >> 1; rest != 0; rest &= rest - 1) {
      edges.emplace_back(static_cast<int>(a), static_cast<int>(a) + 1 + std::countr_zero(rest));
    }
  }
  return Graph(static_cast<int>(s.adj.size()), edges);
}

// Canonical relabeling followed by breadth-first numbering from the center.
RootedSubgraph representative(const State& s, int p) {
  std::vector<int> colors(s.adj.size());
  for (size_t v = 0; v < s.adj.size(); ++v) colors[v] = s.dist[v] * 4 + degree(s, v);
  const auto form = canonical_form(s.adj, colors);
  const Graph canon = to_graph(s).relabeled(form.position);
  return neighborhood_subgraph(canon, Edge(0, 1), p);
}

// Completes every seed; calls emit(state) once per final class.
template <typename Emit>
void grow_from_seed(const RootedSubgraph& seed, int p, const EnumerationOptions& options, Emit&& emit) {
  std::mt19937_64 rng(options.shuffle_seed);
  std::unordered_set<std::string> seen;
  std::vector<State> stack{from_subgraph(seed)};
  seen.insert(state_key(stack.back()));
  while (!stack.empty()) {
    if (options.shuffle_seed != 0) {
      std::uniform_int_distribution<size_t> pick(0, stack.size() - 1);
      std::swap(stack[pick(rng)], stack.back());
    }
    State s = std::move(stack.back());
    stack.pop_back();
    const auto v = open_vertex(s, p);
    if (!v) {
      emit(s);
      continue;
    }
    for (State& t : successors(s, *v, p)) {
      if (seen.insert(state_key(t)).second) stack.push_back(std::move(t));
    }
  }
}

void check_depth(int p, const EnumerationOptions& options) {
  if (p < 0 || p > 3) throw CapacityError("subgraph enumeration supports depths 0 to 3");
  if (p == 3 && !options.allow_long) {
    throw CapacityError("depth-3 enumeration is long-running; enable it explicitly");
  }
}

RootedSubgraph single_edge() { return RootedSubgraph{Graph(2, {{0, 1}}), 0}; }

}  // namespace

std::vector<RootedSubgraph> enumerate_subgraphs(int p, const EnumerationOptions& options) {
  check_depth(p, options);
  std::vector<RootedSubgraph> level{single_edge()};
  for (int d = 1; d <= p; ++d) {
    std::vector<RootedSubgraph> next;
    // States grown from different seeds never coincide: the seed is the
    // depth-(d-1) truncation, which completing layer d-1 leaves untouched.
    for (const RootedSubgraph& seed : level) {
      grow_from_seed(seed, d, options, [&](const State& s) { next.push_back(representative(s, d)); });
    }
    level = std::move(next);
  }
  return level;
}

std::int64_t count_subgraph_classes(int p, const EnumerationOptions& options) {
  check_depth(p, options);
  if (p == 0) return 1;
  const auto seeds = enumerate_subgraphs(p - 1, options);
  std::int64_t total = 0;
  for (const RootedSubgraph& seed : seeds) {
    grow_from_seed(seed, p, options, [&](const State&) { ++total; });
  }
  return total;
}

}  // namespace qaoab
