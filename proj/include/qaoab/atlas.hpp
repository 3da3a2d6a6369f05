#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qaoab/angles.hpp"
#include "qaoab/maxcut.hpp"
#include "qaoab/subgraph.hpp"

namespace qaoab {

struct EnumerationOptions {
  // Depth 3 takes tens of minutes; refused unless set.
  bool allow_long = false;
  // Nonzero: visit worklist items in a seeded random order.
  std::uint64_t shuffle_seed = 0;
};

// One representative per class of depth-p neighborhoods realizable in cubic
// graphs, grown from the depth-(p-1) classes by completing the outer layer
// one edge at a time. Partial states are deduplicated by canonical key.
std::vector<RootedSubgraph> enumerate_subgraphs(int p, const EnumerationOptions& options = {});

// Class count only; keeps one seed's worklist in memory at a time.
std::int64_t count_subgraph_classes(int p, const EnumerationOptions& options = {});

struct AtlasEntry {
  int p = 0;
  int index = 0;
  std::string key;
  RootedSubgraph subgraph;
  CutResult cut;
  double f_fixed = 0.0;
  double f_opt = 0.0;
  Angles opt_angles;
  std::optional<int> env_count;
  // Row number in the published tables, when matched.
  std::optional<int> published_index;

  double c_fraction() const { return static_cast<double>(cut.best_cut) / cut.total_edges; }
};

struct SubgraphCounts {
  std::vector<int> counts;
  int total_edges = 0;
};

class Atlas {
 public:
  Atlas() = default;
  Atlas(int p, std::vector<AtlasEntry> entries);

  int p() const { return p_; }
  const std::vector<AtlasEntry>& entries() const { return entries_; }
  std::vector<AtlasEntry>& mutable_entries() { return entries_; }
  const AtlasEntry& operator[](int index) const { return entries_[static_cast<size_t>(index)]; }
  int size() const { return static_cast<int>(entries_.size()); }

  std::optional<int> find(const std::string& key) const;
  // Entry whose published_index equals the given row.
  std::optional<int> find_published(int published_index) const;
  int tree_index() const;

  // Throws IntegrityError when the neighborhood matches no class.
  int classify_edge(const Graph& g, Edge e) const;
  SubgraphCounts count_subgraphs(const Graph& g) const;

 private:
  int p_ = 0;
  std::vector<AtlasEntry> entries_;
  std::unordered_map<std::string, int> by_key_;
};

// Enumerates, orders by (vertex count, edge count, key) and fills c_max.
// Numeric columns are left at zero.
Atlas make_atlas_skeleton(int p, const EnumerationOptions& options = {});

inline constexpr int kAtlasFormatVersion = 1;

void save_atlas(const Atlas& atlas, const std::string& path);
// Throws FormatError on a bad header, version or checksum.
Atlas load_atlas(const std::string& path);

std::string atlas_to_json_text(const Atlas& atlas);
Atlas atlas_from_json_text(const std::string& text);

// FNV-1a 64-bit.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace qaoab
