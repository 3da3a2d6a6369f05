#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qaoab/atlas.hpp"
#include "qaoab/graph.hpp"
#include "qaoab/rational.hpp"

namespace qaoab {

// Fragment spliced in place of one edge. The fragment is a cubic graph minus
// one edge; its two degree-2 vertices take over the removed edge's endpoints.
struct ReplacementGadget {
  int p = 0;
  Graph fragment;
  Vertex attach_u = 0;
  Vertex attach_v = 0;

  int vertex_count() const { return fragment.vertex_count(); }
  // Includes the two attaching edges.
  int edge_count() const { return fragment.edge_count() + 2; }
};

// p=1: K_{3,3} minus an edge (6 vertices, 10 edges, girth 4).
// p=2: Moebius-Kantor graph minus an edge (16 vertices, 25 edges, girth 6).
ReplacementGadget make_gadget(int p);

// Removes e = (u, v) and joins u to attach_u and v to attach_v. Gadget
// vertices are appended after the existing ones.
Graph replace_edge(const Graph& g, Edge e, const ReplacementGadget& gadget);

struct Transition {
  Edge edge;
  int before = 0;
  int after = 0;
};

// Depth-2p neighborhood of a center edge, completed far enough to fix the
// classes of the edges whose class replacement changes.
struct EnvironmentRecord {
  int p = 0;
  int center_class = 0;
  // Center edge is (0, 1). Vertices outside the region that matters may be
  // left short of degree 3.
  Graph host;
  // Known class of edges within depth p of the center.
  std::vector<std::pair<Edge, int>> assignment;
  // Non-center edges whose class changes when the center is replaced.
  std::vector<Transition> modified;
  // Classes of the gadget's edges after replacement, sorted.
  std::vector<int> gadget_classes;
  // Edges whose class did not change although predicted to.
  int unchanged_predicted = 0;
  // Hex digest of the canonical form of the center and modified edges
  // labelled with their classes before replacement. Environments are counted
  // by this key.
  std::string pattern;

  bool neighbors_modified() const { return !modified.empty(); }
  // Identifies the environment by what replacement does: center class,
  // sorted (before, after) pairs and gadget classes.
  std::string record_key() const;
};

struct EnvironmentOptions {
  // Restrict to these center classes; empty means all.
  std::vector<int> center_classes;
  // Keep hosts with no vertex short of degree 3, i.e. whole graphs. Defaults
  // to p >= 2: the p=1 listing has no K4 host, the p=2 counts include them.
  std::optional<bool> include_closed_hosts;
  // Called after each center class with its index and record count.
  std::function<void(int, int)> progress;
};

// relevant_only: one record per distinct replacement effect, grown only where
// classes change. Otherwise (p = 1 only) every environment, distinguished by
// the class assignment on the depth-p edges. Hosts whose minimum cycle basis
// has a cycle longer than 2p+1 are skipped. In relevant mode one record is
// kept per distinct (pattern, record key).
std::vector<EnvironmentRecord> enumerate_environments(const Atlas& atlas, const ReplacementGadget& gadget,
                                                      bool relevant_only, const EnvironmentOptions& options = {});

// Number of distinct patterns.
int count_relevant(const std::vector<EnvironmentRecord>& environments);

struct ClauseResult {
  double f = 0.0;
  Rational c;
  double f_after = 0.0;
  Rational c_after;
  // f/c >= bound.
  bool a = false;
  // f/c >= (f' - f)/(c' - c); with c' = c it reads f' <= f.
  bool b = false;
  // B and the added material has ratio at most bound, so repeated
  // replacement cannot push the ratio below it.
  bool c_clause = false;
  bool degenerate = false;
};

inline constexpr double kClauseMargin = 1e-12;

ClauseResult check_clauses(const EnvironmentRecord& env, const Atlas& atlas, double bound);

struct HierarchyOptions {
  // Shard i of n over center classes.
  int shard_index = 0;
  int shard_count = 1;
  // Checkpoint file; finished center classes found there are skipped.
  std::optional<std::string> checkpoint;
  std::function<void(int, int)> progress;
};

struct EnvironmentVerdict {
  std::string record_key;
  std::string pattern;
  int center_class = 0;
  ClauseResult clauses;
  bool pass = false;
};

struct HierarchyReport {
  int p = 0;
  double bound = 0.0;
  std::vector<EnvironmentVerdict> verdicts;
  // Distinct environment patterns.
  int relevant_count = 0;
  int unchanged_predicted = 0;
  bool pass = false;
  std::string summary() const;
  std::string json() const;
};

// Requires an atlas with f_fixed filled. p >= 3 raises CapacityError.
// Throws VerificationError naming the first failing environment when
// throw_on_failure is set.
HierarchyReport verify_hierarchy(const Atlas& atlas, const HierarchyOptions& options = {}, bool throw_on_failure = false);

}  // namespace qaoab
