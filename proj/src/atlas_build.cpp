#include "qaoab/atlas_build.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <tuple>

#include "json.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/qaoa.hpp"

namespace qaoab {

void fill_atlas_values(Atlas& atlas, const AtlasBuildOptions& options) {
  const int p = atlas.p();
  const Angles fixed = options.fixed ? *options.fixed : fixed_angles(p);
  if (fixed.p() != p) throw DomainError("fixed angles must have depth " + std::to_string(p));
  for (AtlasEntry& e : atlas.mutable_entries()) {
    EdgeEvaluator eval(e.subgraph.graph);
    e.f_fixed = eval.value(fixed);
    if (!options.optimize || p == 0) {
      e.f_opt = e.f_fixed;
      e.opt_angles = fixed;
      continue;
    }
    const auto best = multistart(SubgraphObjective(e.subgraph.graph, p), options.multistart);
    e.f_opt = best.best_value;
    e.opt_angles = best.best_angles;
  }
}

std::vector<ReferenceRow> load_reference_rows(const std::string& path, int p) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open reference table " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(path + ": " + ex.what());
  }
  std::vector<ReferenceRow> rows;
  try {
    for (const auto& r : j.at("rows")) {
      if (r.at("p").get<int>() != p) continue;
      ReferenceRow row;
      row.index = r.at("index").get<int>();
      row.cut = r.at("cut").get<int>();
      row.total = r.at("total").get<int>();
      row.f_fixed = r.at("f_fixed").get<double>();
      if (r.contains("f_opt")) row.f_opt = r["f_opt"].get<double>();
      if (r.contains("envs")) row.env_count = r["envs"].get<int>();
      rows.push_back(row);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(path + ": " + ex.what());
  }
  return rows;
}

int match_reference(Atlas& atlas, const std::vector<ReferenceRow>& rows) {
  std::vector<std::tuple<double, int, int>> pairs;
  auto& entries = atlas.mutable_entries();
  for (size_t i = 0; i < entries.size(); ++i) {
    const AtlasEntry& e = entries[i];
    for (size_t r = 0; r < rows.size(); ++r) {
      const ReferenceRow& row = rows[r];
      if (static_cast<long>(e.cut.best_cut) * row.total != static_cast<long>(row.cut) * e.cut.total_edges) continue;
      double d = std::fabs(e.f_fixed - row.f_fixed);
      if (row.f_opt) d += std::fabs(e.f_opt - *row.f_opt);
      pairs.emplace_back(d, static_cast<int>(i), static_cast<int>(r));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> used_entry(entries.size()), used_row(rows.size());
  for (AtlasEntry& e : entries) e.published_index.reset();
  int matched = 0;
  for (const auto& [d, i, r] : pairs) {
    if (used_entry[static_cast<size_t>(i)] || used_row[static_cast<size_t>(r)]) continue;
    used_entry[static_cast<size_t>(i)] = true;
    used_row[static_cast<size_t>(r)] = true;
    entries[static_cast<size_t>(i)].published_index = rows[static_cast<size_t>(r)].index;
    ++matched;
  }
  return matched;
}

}  // namespace qaoab
