#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaoab/atlas.hpp"
#include "qaoab/optimizer.hpp"

namespace qaoab {

struct AtlasBuildOptions {
  // Defaults to fixed_angles(p).
  std::optional<Angles> fixed;
  bool optimize = true;
  MultistartOptions multistart;
};

// Fills f_fixed and, when requested, f_opt with its angles for every entry.
void fill_atlas_values(Atlas& atlas, const AtlasBuildOptions& options = {});

// One row of a reference table to align atlas entries with.
struct ReferenceRow {
  int index = 0;
  int cut = 0;
  int total = 0;
  double f_fixed = 0.0;
  std::optional<double> f_opt;
  std::optional<int> env_count;
};

// Reads {"rows": [{p, index, cut, total, f_fixed, f_opt?, envs?}, ...]}
// and keeps rows of depth p.
std::vector<ReferenceRow> load_reference_rows(const std::string& path, int p);

// Sets published_index by pairing entries and rows with equal cut fraction,
// closest (f_fixed, f_opt) first. Returns the number of paired entries.
int match_reference(Atlas& atlas, const std::vector<ReferenceRow>& rows);

}  // namespace qaoab
