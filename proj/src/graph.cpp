#include "qaoab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qaoab/errors.hpp"

namespace qaoab {

Graph::Graph(int vertex_count, std::span<const Edge> edges) {
  if (vertex_count < 0) throw DomainError("negative vertex count");
  const auto n = static_cast<size_t>(vertex_count);
  adjacency_.assign(n, {-1, -1, -1});
  degree_.assign(n, 0);
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) throw DomainError("self-loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v >= vertex_count) {
      throw DomainError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
    }
    if (has_edge(e.u, e.v)) {
      throw DomainError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    for (Vertex x : {e.u, e.v}) {
      auto& d = degree_[static_cast<size_t>(x)];
      if (d == kMaxDegree) throw DomainError("vertex " + std::to_string(x) + " exceeds degree 3");
      adjacency_[static_cast<size_t>(x)][static_cast<size_t>(d++)] = (x == e.u ? e.v : e.u);
    }
    edges_.push_back(e);
  }
}

Graph::Graph(int vertex_count, std::initializer_list<std::pair<int, int>> edges)
    : Graph(vertex_count, [&] {
        std::vector<Edge> es;
        for (auto [a, b] : edges) es.emplace_back(a, b);
        return es;
      }()) {}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a < 0 || a >= vertex_count()) return false;
  const auto nb = neighbors(a);
  return std::find(nb.begin(), nb.end(), b) != nb.end();
}

std::optional<int> Graph::edge_index(Vertex a, Vertex b) const {
  const Edge key(a, b);
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i] == key) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool Graph::is_cubic() const { return !deficient_vertex().has_value(); }

std::optional<Vertex> Graph::deficient_vertex() const {
  for (int v = 0; v < vertex_count(); ++v) {
    if (degree(v) != kMaxDegree) return v;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
  if (vertex_count() > 64) throw CapacityError("adjacency masks need at most 64 vertices");
  std::vector<std::uint64_t> masks(static_cast<size_t>(vertex_count()), 0);
  for (const Edge& e : edges_) {
    masks[static_cast<size_t>(e.u)] |= std::uint64_t{1} << e.v;
    masks[static_cast<size_t>(e.v)] |= std::uint64_t{1} << e.u;
  }
  return masks;
}

std::vector<int> Graph::distances_from(std::span<const Vertex> sources) const {
  std::vector<int> dist(static_cast<size_t>(vertex_count()), -1);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (dist[static_cast<size_t>(s)] != 0) {
      dist[static_cast<size_t>(s)] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : neighbors(x)) {
      if (dist[static_cast<size_t>(y)] < 0) {
        dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

int Graph::connected_components() const {
  std::vector<int> seen(static_cast<size_t>(vertex_count()), 0);
  int components = 0;
  for (int v = 0; v < vertex_count(); ++v) {
    if (seen[static_cast<size_t>(v)]) continue;
    ++components;
    const Vertex src[] = {v};
    const auto d = distances_from(src);
    for (size_t i = 0; i < d.size(); ++i) {
      if (d[i] >= 0) seen[i] = 1;
    }
  }
  return components;
}

Graph Graph::relabeled(std::span<const int> perm) const {
  std::vector<Edge> es;
  es.reserve(edges_.size());
  for (const Edge& e : edges_) {
    es.emplace_back(perm[static_cast<size_t>(e.u)], perm[static_cast<size_t>(e.v)]);
  }
  return Graph(vertex_count(), es);
}

bool Graph::same_edges(const Graph& other) const {
  if (vertex_count() != other.vertex_count() || edge_count() != other.edge_count()) return false;
  auto a = edges_;
  auto b = other.edges_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view tok, int& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end && out >= 0;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<Edge> edges;
  std::vector<int> lines;
  int max_index = -1;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> tokens;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    int a = 0;
    int b = 0;
    if (tokens.size() != 2 || !parse_int(tokens[0], a) || !parse_int(tokens[1], b)) {
      throw ParseError("expected two non-negative vertex indices, got '" + std::string(line) + "'", line_no);
    }
    if (a == b) throw ParseError("self-loop at vertex " + std::to_string(a), line_no);
    const Edge e(a, b);
    for (size_t k = 0; k < edges.size(); ++k) {
      if (edges[k] == e) {
        throw ParseError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                             " (first on line " + std::to_string(lines[k]) + ")",
                         line_no);
      }
    }
    edges.push_back(e);
    lines.push_back(line_no);
    max_index = std::max({max_index, a, b});
  }

  std::vector<int> degree(static_cast<size_t>(max_index + 1), 0);
  for (size_t k = 0; k < edges.size(); ++k) {
    for (Vertex x : {edges[k].u, edges[k].v}) {
      if (++degree[static_cast<size_t>(x)] > kMaxDegree) {
        throw ParseError("vertex " + std::to_string(x) + " has degree above 3", lines[k]);
      }
    }
  }
  return Graph(max_index + 1, edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path);
  }
}

std::string serialize_graph(const Graph& g) {
  auto edges = g.edges();
  std::sort(edges.begin(), edges.end());
  std::string out;
  for (const Edge& e : edges) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

}  // namespace qaoab
