#include "qaoab/bounds.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "qaoab/cycles.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/named_graphs.hpp"
#include "qaoab/qaoa.hpp"
#include "qaoab/tree_symmetry.hpp"

namespace qaoab {

BoundReport lower_bound_fixed_angles(const Graph& g, int p, const Atlas& atlas, const Angles& a,
                                     const std::string& graph_id) {
  if (atlas.p() != p) throw DomainError("atlas depth " + std::to_string(atlas.p()) + " does not match p = " + std::to_string(p));
  if (a.p() != p) throw DomainError("angle depth must equal p");
  if (const auto v = g.deficient_vertex()) {
    throw DomainError("graph is not 3-regular: vertex " + std::to_string(*v) + " has degree " + std::to_string(g.degree(*v)));
  }
  BoundReport r;
  r.graph_id = graph_id;
  r.p = p;
  r.angles_used = a;
  r.counts = atlas.count_subgraphs(g);
  double numerator = 0;
  for (int k = 0; k < atlas.size(); ++k) {
    const int n = r.counts.counts[static_cast<size_t>(k)];
    if (n == 0) continue;
    const AtlasEntry& e = atlas[k];
    numerator += n * EdgeEvaluator(e.subgraph.graph).value(a);
    r.denominator += Rational(static_cast<std::int64_t>(n) * e.cut.best_cut, e.cut.total_edges);
  }
  r.numerator = numerator;
  r.lower_bound = numerator / r.denominator.value();
  return r;
}

std::string report_json(const BoundReport& r) {
  nlohmann::json j;
  j["graph_id"] = r.graph_id;
  j["p"] = r.p;
  j["numerator"] = r.numerator;
  j["denominator"] = r.denominator.str();
  j["denominator_value"] = r.denominator.value();
  j["lower_bound"] = r.lower_bound;
  j["edges"] = r.counts.total_edges;
  j["gammas_deg"] = r.angles_used.gammas_degrees();
  j["betas_deg"] = r.angles_used.betas_degrees();
  nlohmann::json counts = nlohmann::json::object();
  for (size_t k = 0; k < r.counts.counts.size(); ++k) {
    if (r.counts.counts[k] != 0) counts[std::to_string(k)] = r.counts.counts[k];
  }
  j["class_counts"] = counts;
  return j.dump(2);
}

std::string report_tsv(const BoundReport& r) {
  std::ostringstream out;
  out.precision(10);
  out << r.graph_id << '\t' << r.p << '\t' << r.lower_bound << '\t' << r.numerator << '\t' << r.denominator.str();
  for (size_t k = 0; k < r.counts.counts.size(); ++k) {
    if (r.counts.counts[k] != 0) out << '\t' << k << ':' << r.counts.counts[k];
  }
  return out.str();
}

double ordering_lower_bound(std::span<const RatioTerm> terms) {
  if (terms.empty()) throw DomainError("ordering bound needs at least one term");
  double num = 0;
  Rational den;
  for (const RatioTerm& t : terms) {
    if (t.f <= 0 || t.c <= Rational(0) || t.count <= 0) throw DomainError("ordering bound terms must be positive");
    num += t.count * t.f;
    den += Rational(t.count) * t.c;
  }
  return num / den.value();
}

double environment_lower_bound(std::span<const int> classes, const Atlas& atlas) {
  std::vector<RatioTerm> terms;
  for (const int k : classes) {
    if (k < 0 || k >= atlas.size()) throw IntegrityError("environment edge class " + std::to_string(k) + " is not in the atlas");
    const AtlasEntry& e = atlas[k];
    terms.push_back({e.f_fixed, Rational(e.cut.best_cut, e.cut.total_edges), 1});
  }
  return ordering_lower_bound(terms);
}

Rational upper_bound_cmin(int p) {
  if (p < 1) throw DomainError("upper bound needs p >= 1");
  return {2 * p + 2, 2 * p + 3};
}

Tilings build_qgon_tilings(int p) {
  Tilings t;
  switch (p) {
    case 1:
      t = {cube_graph(), dodecahedron_graph()};
      break;
    case 2:
      t = {heawood_graph(), mcgee_graph()};
      break;
    default:
      throw DomainError("tilings are built for p = 1 and 2");
  }
  const int q = 2 * p + 2;
  if (girth(t.even) != q || max_basis_cycle_length(t.even) != q || girth(t.odd) != q + 1 ||
      max_basis_cycle_length(t.odd) != q + 1) {
    throw IntegrityError("tiling witness failed its cycle check");
  }
  return t;
}

Angles depth3_tree_angles() { return Angles::from_degrees({-156, 46, 54}, {-35, -27, -14}); }

std::vector<PlotRow> plot_rows(bool include_depth3) {
  std::vector<PlotRow> rows;
  for (int p = 1; p <= (include_depth3 ? 3 : 2); ++p) {
    const Angles a = p < 3 ? fixed_angles(p) : depth3_tree_angles();
    rows.push_back({p, tree_edge_expectation(p, a), upper_bound_cmin(p).value()});
  }
  return rows;
}

std::string plot_csv(const std::vector<PlotRow>& rows) {
  std::ostringstream out;
  out << "p,worst_case,goemans_williamson,cubic_sdp,upper_bound\n";
  out.setf(std::ios::fixed);
  out.precision(4);
  for (const PlotRow& r : rows) {
    // Lower bounds are truncated, never rounded up.
    out << r.p << ',' << std::floor(r.computed * 1e4) / 1e4 << ',' << kGoemansWilliamson << ',' << kCubicSdp << ',';
    out.precision(6);
    out << r.upper << '\n';
    out.precision(4);
  }
  return out.str();
}

}  // namespace qaoab
