#include "qaoab/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qaoab/canonical.hpp"
#include "qaoab/errors.hpp"

namespace qaoab {

using nlohmann::json;

Atlas::Atlas(int p, std::vector<AtlasEntry> entries) : p_(p), entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (!by_key_.emplace(entries_[i].key, static_cast<int>(i)).second) {
      throw IntegrityError("duplicate canonical key in atlas");
    }
  }
}

std::optional<int> Atlas::find(const std::string& key) const {
  const auto it = by_key_.find(key);
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Atlas::find_published(int published_index) const {
  for (const AtlasEntry& e : entries_) {
    if (e.published_index == published_index) return e.index;
  }
  return std::nullopt;
}

int Atlas::tree_index() const {
  // The tree is the unique class with one more vertex than edges.
  for (const AtlasEntry& e : entries_) {
    if (e.subgraph.graph.vertex_count() == e.subgraph.graph.edge_count() + 1) return e.index;
  }
  throw IntegrityError("atlas has no tree class");
}

int Atlas::classify_edge(const Graph& g, Edge e) const {
  const auto key = canonical_key(neighborhood_subgraph(g, e, p_));
  const auto hit = find(key);
  if (!hit) {
    throw IntegrityError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") matches no depth-" +
                         std::to_string(p_) + " class");
  }
  return *hit;
}

SubgraphCounts Atlas::count_subgraphs(const Graph& g) const {
  SubgraphCounts out;
  out.counts.assign(entries_.size(), 0);
  for (const Edge& e : g.edges()) ++out.counts[static_cast<size_t>(classify_edge(g, e))];
  out.total_edges = g.edge_count();
  return out;
}

Atlas make_atlas_skeleton(int p, const EnumerationOptions& options) {
  auto subgraphs = enumerate_subgraphs(p, options);
  std::vector<AtlasEntry> entries;
  entries.reserve(subgraphs.size());
  for (auto& s : subgraphs) {
    AtlasEntry e;
    e.p = p;
    e.key = canonical_key(s);
    e.cut = max_cut_brute(s.graph);
    e.subgraph = std::move(s);
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const AtlasEntry& a, const AtlasEntry& b) {
    const auto ka = std::make_tuple(a.subgraph.graph.vertex_count(), a.subgraph.graph.edge_count());
    const auto kb = std::make_tuple(b.subgraph.graph.vertex_count(), b.subgraph.graph.edge_count());
    if (ka != kb) return ka < kb;
    return a.key < b.key;
  });
  for (size_t i = 0; i < entries.size(); ++i) entries[i].index = static_cast<int>(i);
  return Atlas(p, std::move(entries));
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

constexpr const char* kMagic = "qaoab-atlas";

std::string hex64(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << x;
  return os.str();
}

json entry_to_json(const AtlasEntry& e) {
  json edges = json::array();
  for (const Edge& ed : e.subgraph.graph.edges()) edges.push_back({ed.u, ed.v});
  json j;
  j["index"] = e.index;
  j["vertex_count"] = e.subgraph.graph.vertex_count();
  j["edges"] = edges;
  j["key"] = to_hex(e.key);
  j["c_max"] = std::to_string(e.cut.best_cut) + "/" + std::to_string(e.cut.total_edges);
  j["cut_witness"] = e.cut.witness;
  j["f_fixed"] = e.f_fixed;
  j["f_opt"] = e.f_opt;
  j["opt_gammas"] = e.opt_angles.gammas;
  j["opt_betas"] = e.opt_angles.betas;
  j["opt_gammas_deg"] = e.opt_angles.gammas_degrees();
  j["opt_betas_deg"] = e.opt_angles.betas_degrees();
  j["env_count"] = e.env_count ? json(*e.env_count) : json(nullptr);
  j["published_index"] = e.published_index ? json(*e.published_index) : json(nullptr);
  return j;
}

AtlasEntry entry_from_json(const json& j, int p) {
  AtlasEntry e;
  e.p = p;
  e.index = j.at("index").get<int>();
  std::vector<Edge> edges;
  for (const auto& pair : j.at("edges")) edges.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
  e.subgraph = RootedSubgraph{Graph(j.at("vertex_count").get<int>(), edges), p};
  e.key = from_hex(j.at("key").get<std::string>());
  const auto cmax = j.at("c_max").get<std::string>();
  const auto slash = cmax.find('/');
  if (slash == std::string::npos) throw FormatError("c_max must be written as cut/total");
  e.cut.best_cut = std::stoi(cmax.substr(0, slash));
  e.cut.total_edges = std::stoi(cmax.substr(slash + 1));
  e.cut.witness = j.at("cut_witness").get<std::vector<int>>();
  e.f_fixed = j.at("f_fixed").get<double>();
  e.f_opt = j.at("f_opt").get<double>();
  // Radians are authoritative; the degree columns are for reading.
  e.opt_angles = Angles(j.at("opt_gammas").get<std::vector<double>>(), j.at("opt_betas").get<std::vector<double>>());
  if (!j.at("env_count").is_null()) e.env_count = j.at("env_count").get<int>();
  if (!j.at("published_index").is_null()) e.published_index = j.at("published_index").get<int>();
  return e;
}

}  // namespace

std::string atlas_to_json_text(const Atlas& atlas) {
  json body;
  body["format"] = kMagic;
  body["format_version"] = kAtlasFormatVersion;
  body["p"] = atlas.p();
  body["class_count"] = atlas.size();
  json records = json::array();
  for (const AtlasEntry& e : atlas.entries()) records.push_back(entry_to_json(e));
  body["entries"] = std::move(records);
  body["checksum"] = hex64(fnv1a64(body.dump()));
  return body.dump(1) + "\n";
}

Atlas atlas_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("atlas is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kMagic) throw FormatError("not an atlas file (bad magic)");
  if (doc.value("format_version", -1) != kAtlasFormatVersion) {
    throw FormatError("unsupported atlas format version " + doc.value("format_version", json(-1)).dump());
  }
  if (!doc.contains("checksum")) throw FormatError("atlas checksum missing");
  const std::string stored = doc["checksum"].get<std::string>();
  doc.erase("checksum");
  if (hex64(fnv1a64(doc.dump())) != stored) throw FormatError("atlas checksum mismatch");

  try {
    const int p = doc.at("p").get<int>();
    std::vector<AtlasEntry> entries;
    for (const auto& j : doc.at("entries")) entries.push_back(entry_from_json(j, p));
    if (static_cast<int>(entries.size()) != doc.at("class_count").get<int>()) {
      throw FormatError("class_count does not match the number of entries");
    }
    return Atlas(p, std::move(entries));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed atlas record: ") + e.what());
  }
}

void save_atlas(const Atlas& atlas, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write atlas file '" + path + "'");
  out << atlas_to_json_text(atlas);
}

Atlas load_atlas(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open atlas file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return atlas_from_json_text(buf.str());
}

}  // namespace qaoab
