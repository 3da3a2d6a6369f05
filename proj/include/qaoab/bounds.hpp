#pragma once

#include <span>
#include <string>
#include <vector>

#include "qaoab/angles.hpp"
#include "qaoab/atlas.hpp"
#include "qaoab/graph.hpp"
#include "qaoab/rational.hpp"

namespace qaoab {

// Lower bound on the approximation ratio of one graph: the expected cut over
// the sum of local max-cut fractions, both summed per edge class.
struct BoundReport {
  std::string graph_id;
  int p = 0;
  SubgraphCounts counts;
  double numerator = 0.0;
  // In edge units: sum of N * best_cut / total_edges.
  Rational denominator;
  double lower_bound = 0.0;
  Angles angles_used;
};

// Classifies every edge of a cubic graph and evaluates each class present at a.
// DomainError names the first vertex whose degree is not 3.
BoundReport lower_bound_fixed_angles(const Graph& g, int p, const Atlas& atlas, const Angles& a,
                                     const std::string& graph_id = "");

std::string report_json(const BoundReport& r);
// graph_id, p, lower_bound, numerator, denominator, then the nonzero class counts.
std::string report_tsv(const BoundReport& r);

struct RatioTerm {
  double f = 0.0;
  Rational c;
  int count = 1;
};

// sum count*f / sum count*c. DomainError on empty input or a nonpositive term.
double ordering_lower_bound(std::span<const RatioTerm> terms);

// Ratio bound restricted to a set of edges given by their atlas classes, using
// the atlas f_fixed column.
double environment_lower_bound(std::span<const int> classes, const Atlas& atlas);

// (2p+2)/(2p+3).
Rational upper_bound_cmin(int p);

struct Tilings {
  // Minimum cycle basis made of (2p+2)-cycles; bipartite.
  Graph even;
  // Minimum cycle basis made of (2p+3)-cycles.
  Graph odd;
};

// Finite q-gon tilings for p = 1 (cube, dodecahedron) and p = 2 (Heawood,
// McGee), checked on construction.
Tilings build_qgon_tilings(int p);

struct PlotRow {
  int p = 0;
  double computed = 0.0;
  double upper = 0.0;
};

inline constexpr double kGoemansWilliamson = 0.8786;
inline constexpr double kCubicSdp = 0.9326;

// Tree values at the fixed angles for p = 1, 2 and at the optimized angles for
// p = 3 (several seconds).
std::vector<PlotRow> plot_rows(bool include_depth3 = true);
std::string plot_csv(const std::vector<PlotRow>& rows);

// Printed optimized angles of the depth-3 tree, in the sign convention used here.
Angles depth3_tree_angles();

}  // namespace qaoab
