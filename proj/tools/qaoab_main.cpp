#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qaoab/atlas.hpp"
#include "qaoab/atlas_build.hpp"
#include "qaoab/bounds.hpp"
#include "qaoab/cycles.hpp"
#include "qaoab/errors.hpp"
#include "qaoab/hierarchy.hpp"
#include "qaoab/maxcut.hpp"
#include "qaoab/optimizer.hpp"
#include "qaoab/qaoa.hpp"
#include "qaoab/subgraph.hpp"

using namespace qaoab;

namespace {

struct RunConfig {
  int p = -1;
  std::vector<double> angles_deg;
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  std::string atlas_path;
  std::string out_path;
  std::string shard;
  std::string resume_path;

  // command specific
  std::string graph_path;
  std::string reference_path;
  std::string format = "tsv";
  bool no_optimize = false;
  int index = -1;
  bool tree = false;
  int starts = 25;
  int mesh = 0;
  bool no_depth3 = false;
};

std::string fmt4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

// Lower bounds are truncated so the printed value is still a bound.
std::string bound4(double x) { return fmt4(std::floor(x * 1e4) / 1e4); }

std::string join_deg(const std::vector<double>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i != 0) out += ',';
    out += fmt4(xs[i]);
  }
  return out;
}

std::string angles_text(const Angles& a) {
  return "gamma=(" + join_deg(a.gammas_degrees()) + ") beta=(" + join_deg(a.betas_degrees()) + ")";
}

int thread_count(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void require_p(const RunConfig& cfg, int lo, int hi) {
  if (cfg.p < lo || cfg.p > hi) {
    throw DomainError("--p must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] for this command");
  }
}

void require_readable(const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
}

void require_writable(const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::app);
  if (!out) throw DomainError("cannot write '" + path + "'");
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

Angles chosen_angles(const RunConfig& cfg) {
  if (cfg.angles_deg.empty()) return fixed_angles(cfg.p);
  if (static_cast<int>(cfg.angles_deg.size()) != 2 * cfg.p) {
    throw DomainError("--angles needs 2p values in degrees: gamma_1..gamma_p,beta_1..beta_p");
  }
  const std::vector<double> g(cfg.angles_deg.begin(), cfg.angles_deg.begin() + cfg.p);
  const std::vector<double> b(cfg.angles_deg.begin() + cfg.p, cfg.angles_deg.end());
  return Angles::from_degrees(g, b);
}

// Loads --atlas, or enumerates the classes and evaluates them at the fixed angles.
Atlas atlas_for(const RunConfig& cfg) {
  if (!cfg.atlas_path.empty()) {
    Atlas a = load_atlas(cfg.atlas_path);
    if (a.p() != cfg.p) throw DomainError("atlas '" + cfg.atlas_path + "' has depth " + std::to_string(a.p()));
    return a;
  }
  Atlas a = make_atlas_skeleton(cfg.p);
  AtlasBuildOptions opts;
  opts.optimize = false;
  fill_atlas_values(a, opts);
  return a;
}

MultistartOptions multistart_options(const RunConfig& cfg) {
  MultistartOptions m;
  m.seed = cfg.seed;
  m.threads = thread_count(cfg);
  m.starts = cfg.starts;
  return m;
}

int cmd_atlas(const RunConfig& cfg) {
  require_p(cfg, 0, 2);
  require_readable(cfg.reference_path);
  const std::string out = cfg.out_path.empty() ? "atlas_p" + std::to_string(cfg.p) + ".json" : cfg.out_path;
  require_writable(out);

  Atlas atlas = make_atlas_skeleton(cfg.p);
  AtlasBuildOptions opts;
  opts.optimize = !cfg.no_optimize;
  opts.multistart = multistart_options(cfg);
  fill_atlas_values(atlas, opts);
  if (cfg.p == 1) {
    const auto gadget = make_gadget(1);
    for (auto& e : atlas.mutable_entries()) {
      EnvironmentOptions eo;
      eo.center_classes = {e.index};
      e.env_count = count_relevant(enumerate_environments(atlas, gadget, true, eo));
    }
  }
  if (!cfg.reference_path.empty()) {
    const int matched = match_reference(atlas, load_reference_rows(cfg.reference_path, cfg.p));
    std::cout << "matched " << matched << " of " << atlas.size() << " reference rows\n";
  }
  save_atlas(atlas, out);

  std::cout << "index\tcut\tf_fixed\tf_opt\tenvs\n";
  for (const auto& e : atlas.entries()) {
    std::cout << e.index << '\t' << e.cut.best_cut << '/' << e.cut.total_edges << '\t' << fmt4(e.f_fixed) << '\t'
              << fmt4(e.f_opt) << '\t' << (e.env_count ? std::to_string(*e.env_count) : "-") << '\n';
  }
  std::cout << atlas.size() << " classes written to " << out << '\n';
  return 0;
}

int cmd_bound(const RunConfig& cfg) {
  require_p(cfg, 1, 2);
  require_readable(cfg.graph_path);
  require_readable(cfg.atlas_path);
  const Graph g = read_graph_file(cfg.graph_path);
  const Atlas atlas = atlas_for(cfg);
  const BoundReport r = lower_bound_fixed_angles(g, cfg.p, atlas, chosen_angles(cfg), cfg.graph_path);
  if (cfg.format == "json") {
    write_or_print(cfg.out_path, report_json(r));
  } else {
    write_or_print(cfg.out_path, report_tsv(r));
  }
  std::cout << "lower bound " << bound4(r.lower_bound) << '\n';
  return 0;
}

int cmd_optimize(const RunConfig& cfg) {
  require_p(cfg, 1, 3);
  require_readable(cfg.graph_path);
  require_readable(cfg.atlas_path);
  std::unique_ptr<Objective> objective;
  std::string what;
  if (cfg.tree) {
    objective = std::make_unique<TreeObjective>(cfg.p);
    what = "tree";
  } else if (!cfg.graph_path.empty()) {
    const Graph g = read_graph_file(cfg.graph_path);
    if (!g.has_edge(0, 1)) throw DomainError("the center edge (0, 1) is not in '" + cfg.graph_path + "'");
    const RootedSubgraph s = neighborhood_subgraph(g, Edge(0, 1), cfg.p);
    objective = std::make_unique<SubgraphObjective>(s.graph, cfg.p);
    what = cfg.graph_path;
  } else {
    if (cfg.p > 2) throw DomainError("atlas subgraphs are available for p <= 2; use --tree at p = 3");
    const Atlas atlas = atlas_for(cfg);
    if (cfg.index < 0 || cfg.index >= atlas.size()) {
      throw DomainError("--index must lie in [0, " + std::to_string(atlas.size()) + ")");
    }
    objective = std::make_unique<SubgraphObjective>(atlas[cfg.index].subgraph.graph, cfg.p);
    what = "class " + std::to_string(cfg.index);
  }

  const MultistartOptions opts = multistart_options(cfg);
  if (cfg.mesh > 0) {
    const auto maxima = find_all_maxima(*objective, cfg.mesh, opts);
    std::cout << maxima.size() << " maxima for " << what << '\n';
    for (const auto& m : maxima) std::cout << fmt4(m.value) << '\t' << angles_text(m.angles) << '\n';
    return 0;
  }
  const OptimizationResult r = multistart(*objective, opts);
  std::cout << what << ": f_opt " << fmt4(r.best_value) << ' ' << angles_text(r.best_angles) << " (" << r.starts_used
            << " starts, " << r.failed_starts << " failed)\n";
  return r.converged ? 0 : 3;
}

std::pair<int, int> parse_shard(const std::string& text) {
  if (text.empty()) return {0, 1};
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) return {std::stoi(text.substr(0, slash)), std::stoi(text.substr(slash + 1))};
  } catch (const std::exception&) {
  }
  throw DomainError("--shard expects i/n, got '" + text + "'");
}

int cmd_verify_hierarchy(const RunConfig& cfg) {
  require_p(cfg, 1, 3);
  require_readable(cfg.atlas_path);
  require_writable(cfg.out_path);
  if (cfg.p == 3) {
    // Fails with the capacity explanation before any enumeration starts.
    verify_hierarchy(Atlas(3, {}));
  }
  const Atlas atlas = atlas_for(cfg);
  HierarchyOptions opts;
  std::tie(opts.shard_index, opts.shard_count) = parse_shard(cfg.shard);
  if (!cfg.resume_path.empty()) {
    require_writable(cfg.resume_path);
    opts.checkpoint = cfg.resume_path;
  }
  opts.progress = [&](int k, int n) { std::cerr << "class " << k << ": " << n << " records\n"; };
  const HierarchyReport r = verify_hierarchy(atlas, opts);
  if (!cfg.out_path.empty()) write_or_print(cfg.out_path, r.json());
  std::cout << r.summary() << '\n';
  std::cout << "relevant environments " << r.relevant_count << '\n';
  return r.pass ? 0 : 4;
}

int cmd_upper_bound(const RunConfig& cfg) {
  require_p(cfg, 1, 1000);
  const Rational r = upper_bound_cmin(cfg.p);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.value());
  std::cout << r.str() << " ≈ " << buf << '\n';
  return 0;
}

int cmd_plotdata(const RunConfig& cfg) {
  require_writable(cfg.out_path);
  write_or_print(cfg.out_path, plot_csv(plot_rows(!cfg.no_depth3)));
  return 0;
}

int cmd_tilings(const RunConfig& cfg) {
  require_p(cfg, 1, 2);
  const Tilings t = build_qgon_tilings(cfg.p);
  const Atlas atlas = atlas_for(cfg);
  const Angles a = chosen_angles(cfg);
  for (const auto& [name, g] : {std::pair<const char*, const Graph*>{"even", &t.even}, {"odd", &t.odd}}) {
    const auto counts = atlas.count_subgraphs(*g);
    const auto per_edge = full_graph_edge_expectations(*g, a);
    const auto [lo, hi] = std::minmax_element(per_edge.begin(), per_edge.end());
    std::cout << name << ": " << g->vertex_count() << " vertices, " << g->edge_count() << " edges, girth " << girth(*g)
              << ", tree edges " << counts.counts[static_cast<size_t>(atlas.tree_index())] << ", per-edge f in ["
              << fmt4(*lo) << ", " << fmt4(*hi) << "]";
    if (g == &t.even) std::cout << ", max cut " << max_cut_brute(*g).best_cut;
    std::cout << '\n';
  }
  std::cout << "upper bound " << upper_bound_cmin(cfg.p).str() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case bounds for depth-p QAOA MaxCut on 3-regular graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--seed", cfg.seed, "Multistart seed")->envname("QAOAB_SEED");
  app.add_option("--threads", cfg.threads, "Worker threads; 1 runs serially (default: all cores)")
      ->envname("QAOAB_THREADS")
      ->check(CLI::NonNegativeNumber);

  auto add_p = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--p", cfg.p, "QAOA depth")->envname("QAOAB_P");
    if (required) opt->required();
  };
  auto add_atlas = [&](CLI::App* sub) {
    sub->add_option("--atlas", cfg.atlas_path, "Atlas file from the atlas command (default: fixed-angle atlas built on the fly)")
        ->envname("QAOAB_ATLAS");
  };
  auto add_out = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("--out", cfg.out_path, help)->envname("QAOAB_OUT");
  };
  auto add_angles = [&](CLI::App* sub) {
    sub->add_option("--angles", cfg.angles_deg, "gamma_1..gamma_p,beta_1..beta_p in degrees")
        ->delimiter(',')
        ->envname("QAOAB_ANGLES");
  };

  auto* atlas = app.add_subcommand("atlas", "Enumerate depth-p subgraph classes and fill their table");
  add_p(atlas, true);
  add_out(atlas, "Atlas file (default atlas_p<p>.json)");
  atlas->add_flag("--no-optimize", cfg.no_optimize, "Skip the multistart f_opt column");
  atlas->add_option("--reference", cfg.reference_path, "Reference table JSON to align indices with");

  auto* bound = app.add_subcommand("bound", "Lower bound on the approximation ratio of one graph");
  add_p(bound, true);
  add_atlas(bound);
  add_angles(bound);
  add_out(bound, "Report file (default stdout)");
  bound->add_option("graph", cfg.graph_path, "Edge-list file")->required();
  bound->add_option("--format", cfg.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  auto* optimize = app.add_subcommand("optimize", "Maximize a center-edge expectation over the angles");
  add_p(optimize, true);
  add_atlas(optimize);
  optimize->add_option("--index", cfg.index, "Atlas class index");
  optimize->add_flag("--tree", cfg.tree, "Optimize the depth-p tree");
  optimize->add_option("--graph", cfg.graph_path, "Edge-list file; the center edge is (0, 1)");
  optimize->add_option("--starts", cfg.starts, "Random starts")->check(CLI::PositiveNumber);
  optimize->add_option("--mesh", cfg.mesh, "List all maxima from a mesh with this many points per axis");

  auto* verify = app.add_subcommand("verify-hierarchy", "Check the edge-replacement clauses on all relevant environments");
  add_p(verify, true);
  add_atlas(verify);
  add_out(verify, "JSON report");
  verify->add_option("--shard", cfg.shard, "Process shard i of n, as i/n")->envname("QAOAB_SHARD");
  verify->add_option("--resume", cfg.resume_path, "Checkpoint file, created or resumed")->envname("QAOAB_RESUME");

  auto* upper = app.add_subcommand("upper-bound", "Indistinguishability upper bound (2p+2)/(2p+3)");
  add_p(upper, true);

  auto* plot = app.add_subcommand("plotdata", "Worst-case ratio against p as CSV");
  add_out(plot, "CSV file (default stdout)");
  plot->add_flag("--no-depth3", cfg.no_depth3, "Skip the depth-3 tree value (several seconds)");

  auto* tilings = app.add_subcommand("tilings", "Even and odd q-gon tilings the depth-p ansatz cannot tell apart");
  add_p(tilings, true);
  add_atlas(tilings);
  add_angles(tilings);

  CLI11_PARSE(app, argc, argv);

  try {
    if (atlas->parsed()) return cmd_atlas(cfg);
    if (bound->parsed()) return cmd_bound(cfg);
    if (optimize->parsed()) return cmd_optimize(cfg);
    if (verify->parsed()) return cmd_verify_hierarchy(cfg);
    if (upper->parsed()) return cmd_upper_bound(cfg);
    if (plot->parsed()) return cmd_plotdata(cfg);
    if (tilings->parsed()) return cmd_tilings(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
