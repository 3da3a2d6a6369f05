#include "qaoab/hierarchy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "qaoab/canonical.hpp"
#include "qaoab/cycles.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/named_graphs.hpp"
#include "qaoab/subgraph.hpp"

namespace qaoab {

ReplacementGadget make_gadget(int p) {
  ReplacementGadget g;
  g.p = p;
  std::vector<Edge> edges;
  Graph full;
  switch (p) {
    case 1: {
      std::vector<Edge> k33;
      for (int a = 0; a < 3; ++a) {
        for (int b = 3; b < 6; ++b) k33.emplace_back(a, b);
      }
      full = Graph(6, k33);
      break;
    }
    case 2:
      full = mobius_kantor_graph();
      break;
    default:
      throw DomainError("gadgets exist for p = 1 and 2");
  }
  // Both graphs are edge-transitive, so the removed edge is arbitrary.
  const Edge cut = full.edges().front();
  for (const Edge& e : full.edges()) {
    if (e != cut) edges.push_back(e);
  }
  g.fragment = Graph(full.vertex_count(), edges);
  g.attach_u = cut.u;
  g.attach_v = cut.v;
  return g;
}

Graph replace_edge(const Graph& g, Edge e, const ReplacementGadget& gadget) {
  if (!g.has_edge(e.u, e.v)) {
    throw DomainError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in graph");
  }
  const int n = g.vertex_count();
  std::vector<Edge> edges;
  for (const Edge& x : g.edges()) {
    if (x != e) edges.push_back(x);
  }
  for (const Edge& x : gadget.fragment.edges()) edges.emplace_back(n + x.u, n + x.v);
  edges.emplace_back(e.u, n + gadget.attach_u);
  edges.emplace_back(e.v, n + gadget.attach_v);
  return Graph(n + gadget.vertex_count(), edges);
}

std::string EnvironmentRecord::record_key() const {
  std::vector<std::pair<int, int>> pairs;
  for (const Transition& t : modified) pairs.emplace_back(t.before, t.after);
  std::sort(pairs.begin(), pairs.end());
  std::ostringstream out;
  out << p << ':' << center_class << '|';
  for (const auto& [b, a] : pairs) out << b << '>' << a << ',';
  out << '|';
  for (const int k : gadget_classes) out << k << ',';
  return out.str();
}

namespace {

using Mask = std::uint64_t;
constexpr Mask bit(size_t v) { return Mask{1} << v; }

struct State {
  std::vector<Mask> adj;
  std::vector<int> dist;
  // Endpoints of edges whose class replacement changes (relevant mode).
  Mask endpoints = 0;
};

int degree(const State& s, size_t v) { return std::popcount(s.adj[v]); }

void add_edge(State& s, size_t a, size_t b) {
  s.adj[a] |= bit(b);
  s.adj[b] |= bit(a);
}

Graph to_graph(const State& s) {
  std::vector<Edge> edges;
  for (size_t a = 0; a < s.adj.size(); ++a) {
    for (Mask rest = s.adj[a] >> a >> 1; rest != 0; rest &= rest - 1) {
      edges.emplace_back(static_cast<int>(a), static_cast<int>(a) + 1 + std::countr_zero(rest));
    }
  }
  return Graph(static_cast<int>(s.adj.size()), edges);
}

// Two independent 64-bit hashes of the canonical key; the seen sets hold
// millions of states for the larger p=2 classes.
struct KeyHash {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  friend bool operator==(const KeyHash&, const KeyHash&) = default;
};

struct KeyHashHasher {
  size_t operator()(const KeyHash& k) const { return static_cast<size_t>(k.a ^ (k.b * 0x9e3779b97f4a7c15ULL)); }
};

KeyHash state_key(const State& s) {
  std::vector<int> colors(s.adj.size());
  for (size_t v = 0; v < s.adj.size(); ++v) {
    colors[v] = (s.dist[v] * 4 + degree(s, v)) * 2 + static_cast<int>((s.endpoints >> v) & 1U);
  }
  const std::string key = canonical_form(s.adj, colors).key;
  return {fnv1a64(key), std::hash<std::string>{}(key)};
}

// Which vertices must reach degree 3 so that every edge of interest has a
// fully determined depth-p neighborhood.
class Region {
 public:
  Region(int p, bool relevant_only) : p_(p), relevant_only_(relevant_only) {}

  bool must_complete(const State& s, size_t v) const {
    if (!relevant_only_) return s.dist[v] <= 2 * p_ - 1;
    // Within p-1 of an endpoint; p <= 2 so that is the endpoint or a neighbor.
    if ((s.endpoints >> v) & 1U) return true;
    return p_ == 2 && (s.adj[v] & s.endpoints) != 0;
  }

 private:
  int p_;
  bool relevant_only_;
};

// Completes the must-complete vertices layer by layer and emits every final
// state once, as soon as it is reached.
template <typename Emit>
void grow(State start, int p, const Region& region, Emit&& emit) {
  std::vector<State> layer{std::move(start)};
  for (int d = p + 1; d <= 2 * p; ++d) {
    std::vector<State> finals;
    std::unordered_set<KeyHash, KeyHashHasher> seen;
    std::vector<State> stack;
    for (State& s : layer) {
      if (seen.insert(state_key(s)).second) stack.push_back(std::move(s));
    }
    while (!stack.empty()) {
      State s = std::move(stack.back());
      stack.pop_back();
      std::optional<size_t> open;
      for (size_t v = 0; v < s.adj.size(); ++v) {
        if (s.dist[v] == d - 1 && degree(s, v) < kMaxDegree && region.must_complete(s, v)) {
          open = v;
          break;
        }
      }
      if (!open) {
        if (d == 2 * p) {
          emit(s);
        } else {
          finals.push_back(std::move(s));
        }
        continue;
      }
      const size_t v = *open;
      auto push = [&](State t) {
        if (seen.insert(state_key(t)).second) stack.push_back(std::move(t));
      };
      for (size_t w = 0; w < s.adj.size(); ++w) {
        if (w == v || ((s.adj[v] >> w) & 1U) || degree(s, w) >= kMaxDegree) continue;
        if (s.dist[w] < d - 2 || s.dist[w] > d) continue;
        State t = s;
        add_edge(t, v, w);
        push(std::move(t));
      }
      if (s.adj.size() >= 64) throw CapacityError("environment host exceeds 64 vertices");
      State t = s;
      t.adj.push_back(0);
      t.dist.push_back(d);
      add_edge(t, v, t.adj.size() - 1);
      push(std::move(t));
    }
    layer = std::move(finals);
  }
}

// S completed with fresh branches far enough that every depth-p neighborhood
// of an S edge is complete.
Graph generic_completion(const RootedSubgraph& s) {
  const int p = s.depth;
  std::vector<Edge> edges = s.graph.edges();
  std::vector<int> deg(static_cast<size_t>(s.graph.vertex_count()));
  std::vector<int> dist = s.center_distances();
  for (int v = 0; v < s.graph.vertex_count(); ++v) deg[static_cast<size_t>(v)] = s.graph.degree(v);
  for (size_t v = 0; v < deg.size(); ++v) {
    while (dist[v] <= 2 * p - 1 && deg[v] < kMaxDegree) {
      const int w = static_cast<int>(deg.size());
      deg.push_back(1);
      dist.push_back(dist[v] + 1);
      ++deg[v];
      edges.emplace_back(static_cast<int>(v), w);
    }
  }
  return Graph(static_cast<int>(deg.size()), edges);
}

// Non-center S edges whose class replacement changes, judged on the generic completion.
std::vector<Edge> predicted_modified(const RootedSubgraph& s, const ReplacementGadget& gadget) {
  const Graph g = generic_completion(s);
  const Graph h = replace_edge(g, Edge(0, 1), gadget);
  std::vector<Edge> out;
  for (const Edge& e : s.graph.edges()) {
    if (e == Edge(0, 1)) continue;
    if (canonical_key(neighborhood_subgraph(g, e, s.depth)) != canonical_key(neighborhood_subgraph(h, e, s.depth))) {
      out.push_back(e);
    }
  }
  return out;
}

// Class assignment on the depth-p edges with each edge subdivided by a vertex
// coloured with its class.
std::string assignment_key(const Graph& host, const std::vector<int>& dist, const std::vector<std::pair<Edge, int>>& assignment) {
  std::map<int, int> ids;
  auto id = [&](int v) {
    const auto it = ids.find(v);
    if (it != ids.end()) return it->second;
    const int k = static_cast<int>(ids.size());
    ids.emplace(v, k);
    return k;
  };
  std::vector<std::pair<int, int>> half_edges;
  std::vector<int> colors;
  for (const auto& [e, k] : assignment) {
    half_edges.emplace_back(id(e.u), id(e.v));
  }
  const int n = static_cast<int>(ids.size());
  std::vector<Mask> adj(static_cast<size_t>(n) + assignment.size(), 0);
  colors.assign(adj.size(), 0);
  for (const auto& [v, k] : ids) colors[static_cast<size_t>(k)] = dist[static_cast<size_t>(v)] * 4 + host.degree(v);
  for (size_t i = 0; i < assignment.size(); ++i) {
    const size_t m = static_cast<size_t>(n) + i;
    const auto [a, b] = half_edges[i];
    adj[m] |= bit(static_cast<size_t>(a)) | bit(static_cast<size_t>(b));
    adj[static_cast<size_t>(a)] |= bit(m);
    adj[static_cast<size_t>(b)] |= bit(m);
    colors[m] = 32 + assignment[i].second;
  }
  if (adj.size() > 64) throw CapacityError("assignment pattern too large");
  return canonical_form(adj, colors).key;
}

std::string hex_digest(const std::string& key) {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(fnv1a64(key)),
                static_cast<unsigned long long>(std::hash<std::string>{}(key)));
  return buf;
}

bool valid_host(const Graph& host, int p, bool include_closed) {
  if (!include_closed && host.is_cubic()) return false;
  return cycle_space_spanned_by(host, 2 * p + 1);
}

}  // namespace

std::vector<EnvironmentRecord> enumerate_environments(const Atlas& atlas, const ReplacementGadget& gadget,
                                                      bool relevant_only, const EnvironmentOptions& options) {
  const int p = atlas.p();
  if (p < 1 || p > 2) throw CapacityError("environment enumeration supports p = 1 and 2");
  if (gadget.p != p) throw DomainError("gadget depth does not match the atlas");
  if (!relevant_only && p != 1) {
    throw CapacityError("full environment enumeration is only feasible for p = 1; use relevant environments");
  }
  std::vector<int> centers = options.center_classes;
  if (centers.empty()) {
    for (int k = 0; k < atlas.size(); ++k) centers.push_back(k);
  }
  const Region region(p, relevant_only);
  const bool include_closed = options.include_closed_hosts.value_or(p >= 2);
  std::vector<EnvironmentRecord> out;
  for (const int k : centers) {
    if (k < 0 || k >= atlas.size()) throw DomainError("center class " + std::to_string(k) + " out of range");
    const RootedSubgraph& s = atlas[k].subgraph;
    const auto modified = predicted_modified(s, gadget);
    State start{s.graph.adjacency_masks(), s.center_distances(), 0};
    for (const Edge& e : modified) start.endpoints |= bit(static_cast<size_t>(e.u)) | bit(static_cast<size_t>(e.v));

    std::set<std::string> keys;
    const size_t before = out.size();
    grow(start, p, region, [&](const State& st) {
      const Graph host = to_graph(st);
      if (!valid_host(host, p, include_closed)) return;
      const Graph replaced = replace_edge(host, Edge(0, 1), gadget);
      EnvironmentRecord rec;
      rec.p = p;
      rec.center_class = k;
      rec.host = host;
      rec.assignment.emplace_back(Edge(0, 1), k);
      if (relevant_only) {
        for (const Edge& e : modified) {
          const int b = atlas.classify_edge(host, e);
          const int a = atlas.classify_edge(replaced, e);
          rec.assignment.emplace_back(e, b);
          if (a == b) {
            ++rec.unchanged_predicted;
          } else {
            rec.modified.push_back({e, b, a});
          }
        }
      } else {
        for (const Edge& e : s.graph.edges()) {
          if (e == Edge(0, 1)) continue;
          const int b = atlas.classify_edge(host, e);
          const int a = atlas.classify_edge(replaced, e);
          rec.assignment.emplace_back(e, b);
          if (a != b) rec.modified.push_back({e, b, a});
        }
      }
      const int n = host.vertex_count();
      for (const Edge& e : gadget.fragment.edges()) {
        rec.gadget_classes.push_back(atlas.classify_edge(replaced, Edge(n + e.u, n + e.v)));
      }
      rec.gadget_classes.push_back(atlas.classify_edge(replaced, Edge(0, n + gadget.attach_u)));
      rec.gadget_classes.push_back(atlas.classify_edge(replaced, Edge(1, n + gadget.attach_v)));
      std::sort(rec.gadget_classes.begin(), rec.gadget_classes.end());
      std::vector<std::pair<Edge, int>> changed{{Edge(0, 1), k}};
      for (const Transition& t : rec.modified) changed.emplace_back(t.edge, t.before);
      rec.pattern = hex_digest(assignment_key(host, st.dist, changed));
      const std::string key =
          relevant_only ? rec.pattern + '|' + rec.record_key() : assignment_key(host, st.dist, rec.assignment);
      if (keys.insert(key).second) out.push_back(std::move(rec));
    });
    if (options.progress) options.progress(k, static_cast<int>(out.size() - before));
  }
  return out;
}

int count_relevant(const std::vector<EnvironmentRecord>& environments) {
  std::set<std::string> keys;
  for (const auto& e : environments) keys.insert(e.pattern);
  return static_cast<int>(keys.size());
}

ClauseResult check_clauses(const EnvironmentRecord& env, const Atlas& atlas, double bound) {
  auto f_of = [&](int k) { return atlas[k].f_fixed; };
  auto c_of = [&](int k) { return Rational(atlas[k].cut.best_cut, atlas[k].cut.total_edges); };
  ClauseResult r;
  r.f = f_of(env.center_class);
  r.c = c_of(env.center_class);
  for (const Transition& t : env.modified) {
    r.f += f_of(t.before);
    r.c += c_of(t.before);
    r.f_after += f_of(t.after);
    r.c_after += c_of(t.after);
  }
  for (const int k : env.gadget_classes) {
    r.f_after += f_of(k);
    r.c_after += c_of(k);
  }
  const double ratio = r.f / r.c.value();
  r.a = ratio >= bound - kClauseMargin;
  const Rational dc = r.c_after - r.c;
  const double df = r.f_after - r.f;
  if (dc == Rational(0)) {
    r.degenerate = true;
    r.b = df <= kClauseMargin;
    r.c_clause = r.b;
  } else if (dc > Rational(0)) {
    const double marginal = df / dc.value();
    r.b = ratio >= marginal - kClauseMargin;
    r.c_clause = r.b && marginal <= bound + kClauseMargin;
  } else {
    // Replacement removed cut weight; f/c >= df/dc flips direction.
    const double marginal = df / dc.value();
    r.b = ratio <= marginal + kClauseMargin;
    r.c_clause = r.b;
  }
  return r;
}

std::string HierarchyReport::summary() const {
  // An environment passes when every replacement effect recorded for it does.
  std::map<std::string, bool> by_pattern;
  for (const auto& v : verdicts) {
    const auto [it, fresh] = by_pattern.emplace(v.pattern, v.pass);
    if (!fresh) it->second = it->second && v.pass;
  }
  const auto passed = std::count_if(by_pattern.begin(), by_pattern.end(), [](const auto& kv) { return kv.second; });
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  // Truncated so the printed bound never exceeds the true one.
  out << (pass ? "PASS " : "FAIL ") << passed << '/' << by_pattern.size() << " environments, bound "
      << std::floor(bound * 1e4) / 1e4;
  return out.str();
}

namespace {

nlohmann::json verdict_json(const EnvironmentVerdict& v) {
  const ClauseResult& c = v.clauses;
  return {{"key", v.record_key},   {"pattern", v.pattern},            {"center_class", v.center_class}, {"f", c.f},
          {"c", c.c.str()},        {"f_after", c.f_after},            {"c_after", c.c_after.str()},
          {"A", c.a},              {"B", c.b},                        {"C", c.c_clause},
          {"degenerate", c.degenerate}, {"pass", v.pass}};
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw FormatError("bad fraction '" + s + "'");
  return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

EnvironmentVerdict verdict_from_json(const nlohmann::json& j) {
  EnvironmentVerdict v;
  v.record_key = j.at("key").get<std::string>();
  v.pattern = j.at("pattern").get<std::string>();
  v.center_class = j.at("center_class").get<int>();
  v.clauses.f = j.at("f").get<double>();
  v.clauses.c = parse_rational(j.at("c").get<std::string>());
  v.clauses.f_after = j.at("f_after").get<double>();
  v.clauses.c_after = parse_rational(j.at("c_after").get<std::string>());
  v.clauses.a = j.at("A").get<bool>();
  v.clauses.b = j.at("B").get<bool>();
  v.clauses.c_clause = j.at("C").get<bool>();
  v.clauses.degenerate = j.at("degenerate").get<bool>();
  v.pass = j.at("pass").get<bool>();
  return v;
}

}  // namespace

std::string HierarchyReport::json() const {
  nlohmann::json j;
  j["p"] = p;
  j["bound"] = bound;
  j["relevant_count"] = relevant_count;
  j["unchanged_predicted"] = unchanged_predicted;
  j["pass"] = pass;
  j["environments"] = nlohmann::json::array();
  for (const auto& v : verdicts) j["environments"].push_back(verdict_json(v));
  return j.dump(2);
}

HierarchyReport verify_hierarchy(const Atlas& atlas, const HierarchyOptions& options, bool throw_on_failure) {
  const int p = atlas.p();
  if (p >= 3) {
    throw CapacityError("hierarchy verification is limited to p <= 2; at p = 3 there are 913,088 subgraph classes "
                        "and far more environments");
  }
  if (p < 1) throw DomainError("hierarchy verification needs p >= 1");
  if (options.shard_count < 1 || options.shard_index < 0 || options.shard_index >= options.shard_count) {
    throw DomainError("shard index must lie in [0, shard count)");
  }
  const ReplacementGadget gadget = make_gadget(p);
  HierarchyReport report;
  report.p = p;
  report.bound = atlas[atlas.tree_index()].f_fixed;

  std::set<int> done;
  std::map<int, std::vector<EnvironmentVerdict>> verdicts;
  std::map<int, int> unchanged;
  if (options.checkpoint) {
    std::ifstream in(*options.checkpoint);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        if (j.at("p").get<int>() != p) throw FormatError("checkpoint depth mismatch");
        const int k = j.at("center").get<int>();
        done.insert(k);
        unchanged[k] = j.value("unchanged_predicted", 0);
        for (const auto& v : j.at("environments")) verdicts[k].push_back(verdict_from_json(v));
      } catch (const nlohmann::json::exception&) {
        // A torn last line from an interrupted run; that class is redone.
        if (in.peek() != EOF) throw FormatError(*options.checkpoint + ":" + std::to_string(line_no) + ": malformed checkpoint line");
      }
    }
  }
  std::ofstream log;
  if (options.checkpoint) log.open(*options.checkpoint, std::ios::app);

  for (int k = 0; k < atlas.size(); ++k) {
    if (k % options.shard_count != options.shard_index || done.count(k) != 0) continue;
    EnvironmentOptions eo;
    eo.center_classes = {k};
    const auto envs = enumerate_environments(atlas, gadget, true, eo);
    auto& list = verdicts[k];
    int miss = 0;
    for (const auto& env : envs) {
      EnvironmentVerdict v;
      v.record_key = env.record_key();
      v.pattern = env.pattern;
      v.center_class = k;
      v.clauses = check_clauses(env, atlas, report.bound);
      v.pass = !( !v.clauses.a && v.clauses.b);
      miss += env.unchanged_predicted;
      list.push_back(std::move(v));
    }
    unchanged[k] = miss;
    if (log.is_open()) {
      nlohmann::json j{{"p", p}, {"center", k}, {"unchanged_predicted", miss}, {"environments", nlohmann::json::array()}};
      for (const auto& v : list) j["environments"].push_back(verdict_json(v));
      log << j.dump() << '\n';
      log.flush();
    }
    if (options.progress) options.progress(k, static_cast<int>(list.size()));
  }

  std::set<std::string> patterns;
  for (auto& [k, list] : verdicts) {
    for (auto& v : list) {
      patterns.insert(v.pattern);
      report.verdicts.push_back(std::move(v));
    }
  }
  for (const auto& [k, n] : unchanged) report.unchanged_predicted += n;
  report.relevant_count = static_cast<int>(patterns.size());
  report.pass = std::all_of(report.verdicts.begin(), report.verdicts.end(), [](const auto& v) { return v.pass; });
  if (!report.pass && throw_on_failure) {
    for (const auto& v : report.verdicts) {
      if (!v.pass) throw VerificationError("environment " + v.record_key + " has A false and B true");
    }
  }
  return report;
}

}  // namespace qaoab
