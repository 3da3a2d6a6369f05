#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qaoab/angles.hpp"
#include "qaoab/graph.hpp"
#include "qaoab/qaoa.hpp"
#include "qaoab/tree_symmetry.hpp"

namespace qaoab {

// Something to maximize over (gamma, beta). Implementations hold scratch
// buffers, so each thread needs its own clone.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual int p() const = 0;
  virtual double value(const Angles& a) = 0;
  // Fills grad with d/d(gamma_1..gamma_p, beta_1..beta_p).
  virtual double value_and_gradient(const Angles& a, std::vector<double>& grad) = 0;
  virtual std::unique_ptr<Objective> clone() const = 0;
};

// Center-edge expectation of a subgraph, exact adjoint gradient.
class SubgraphObjective : public Objective {
 public:
  SubgraphObjective(const Graph& g, int p) : graph_(g), evaluator_(g), p_(p) {}
  int p() const override { return p_; }
  double value(const Angles& a) override { return evaluator_.value(a); }
  double value_and_gradient(const Angles& a, std::vector<double>& grad) override {
    return evaluator_.value_and_gradient(a, grad);
  }
  std::unique_ptr<Objective> clone() const override { return std::make_unique<SubgraphObjective>(graph_, p_); }

 private:
  Graph graph_;
  EdgeEvaluator evaluator_;
  int p_;
};

// Depth-p tree via the symmetric sector; exact gradient up to p=2, central
// differences at p=3.
class TreeObjective : public Objective {
 public:
  explicit TreeObjective(int p) : evaluator_(p) {}
  int p() const override { return evaluator_.p(); }
  double value(const Angles& a) override { return evaluator_.value(a); }
  double value_and_gradient(const Angles& a, std::vector<double>& grad) override;
  std::unique_ptr<Objective> clone() const override { return std::make_unique<TreeObjective>(*this); }

 private:
  TreeEvaluator evaluator_;
};

struct AscentOptions {
  double step = 0.075;
  double value_tolerance = 1e-5;
  double gradient_tolerance = 1e-4;
  int max_steps = 100000;
};

struct AscentResult {
  Angles angles;  // reduced
  double value = 0.0;
  double gradient_norm = 0.0;
  int steps = 0;
  // Steps where the full step lowered f and was halved instead.
  int backtracks = 0;
};

// a <- a + step * grad f until |delta f| < value_tolerance, then keeps
// stepping until |grad f| < gradient_tolerance. Throws ConvergenceError after
// max_steps with the tail of the trajectory in the message.
AscentResult gradient_ascent(Objective& f, const Angles& init, const AscentOptions& options = {});

struct Maximum {
  Angles angles;
  double value = 0.0;
};

struct OptimizationResult {
  Angles best_angles;
  double best_value = 0.0;
  int starts_used = 0;
  int failed_starts = 0;
  bool converged = false;
  std::vector<Maximum> all_maxima;
};

inline constexpr std::uint64_t kDefaultSeed = 20190415;

struct MultistartOptions {
  int starts = 25;
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  AscentOptions ascent;
  // Maxima closer than this on the reduced torus are one cluster.
  double cluster_radius = deg_to_rad(0.5);
  // Clusters below best - keep_margin are dropped.
  double keep_margin = 1e-4;
};

// Uniform starts over gamma in [-pi, pi), beta in [-pi/4, pi/4).
OptimizationResult multistart(const Objective& f, const MultistartOptions& options = {});

// Ascends from every point of a regular mesh (density points per axis, cell
// centers) and clusters the end points.
std::vector<Maximum> find_all_maxima(const Objective& f, int mesh_density, const MultistartOptions& options = {});

// Groups points within radius on the reduced torus; keeps the best value of each.
std::vector<Maximum> cluster_maxima(const std::vector<Maximum>& points, double radius, double keep_margin);

}  // namespace qaoab
