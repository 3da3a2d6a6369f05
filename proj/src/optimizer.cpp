#include "qaoab/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>
#include <thread>

#include "qaoab/errors.hpp"

namespace qaoab {
namespace {

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (const double x : v) s += x * x;
  return std::sqrt(s);
}

// Runs fn(i, objective) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(const Objective& f, int count, int threads, Fn&& fn) {
  const int workers = std::max(1, std::min(threads, count));
  std::atomic<int> next{0};
  auto work = [&] {
    auto local = f.clone();
    for (int i = next++; i < count; i = next++) fn(i, *local);
  };
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

}  // namespace

double TreeObjective::value_and_gradient(const Angles& a, std::vector<double>& grad) {
  if (a.p() <= 2) return evaluator_.value_and_gradient(a, grad);
  constexpr double h = 1e-6;
  auto flat = a.flat();
  grad.assign(flat.size(), 0.0);
  for (size_t k = 0; k < flat.size(); ++k) {
    const double x = flat[k];
    flat[k] = x + h;
    const double up = evaluator_.value(Angles::from_flat(flat));
    flat[k] = x - h;
    const double dn = evaluator_.value(Angles::from_flat(flat));
    flat[k] = x;
    grad[k] = (up - dn) / (2 * h);
  }
  return evaluator_.value(a);
}

AscentResult gradient_ascent(Objective& f, const Angles& init, const AscentOptions& options) {
  for (const double x : init.flat()) {
    if (!std::isfinite(x)) throw DomainError("initial angles must be finite");
  }
  auto x = init.flat();
  std::vector<double> g;
  double fx = f.value_and_gradient(Angles::from_flat(x), g);
  AscentResult out;
  bool polishing = false;
  std::deque<std::pair<double, double>> tail;
  std::vector<double> trial(x.size());
  std::vector<double> gt;
  for (;;) {
    const double gn = norm2(g);
    if (polishing && gn < options.gradient_tolerance) break;
    if (out.steps >= options.max_steps) {
      std::ostringstream msg;
      msg << "gradient ascent did not converge in " << options.max_steps << " steps; last (f, |grad|):";
      for (const auto& [v, n] : tail) msg << " (" << v << ", " << n << ")";
      throw ConvergenceError(msg.str());
    }
    double step = options.step;
    double ft = 0;
    for (int halvings = 0;; ++halvings) {
      for (size_t k = 0; k < x.size(); ++k) trial[k] = x[k] + step * g[k];
      ft = f.value_and_gradient(Angles::from_flat(trial), gt);
      if (ft >= fx - 1e-12 || halvings == 40) break;
      step /= 2;
      ++out.backtracks;
    }
    ++out.steps;
    const double delta = ft - fx;
    x.swap(trial);
    g.swap(gt);
    fx = ft;
    tail.emplace_back(fx, norm2(g));
    if (tail.size() > 5) tail.pop_front();
    if (!polishing && std::fabs(delta) < options.value_tolerance) polishing = true;
  }
  out.angles = Angles::from_flat(x).reduced();
  out.value = fx;
  out.gradient_norm = norm2(g);
  return out;
}

std::vector<Maximum> cluster_maxima(const std::vector<Maximum>& points, double radius, double keep_margin) {
  std::vector<Maximum> clusters;
  for (const Maximum& m : points) {
    auto hit = std::find_if(clusters.begin(), clusters.end(),
                            [&](const Maximum& c) { return torus_distance(c.angles, m.angles) <= radius; });
    if (hit == clusters.end()) {
      clusters.push_back(m);
    } else if (m.value > hit->value) {
      *hit = m;
    }
  }
  double best = -1;
  for (const Maximum& c : clusters) best = std::max(best, c.value);
  std::erase_if(clusters, [&](const Maximum& c) { return c.value < best - keep_margin; });
  std::sort(clusters.begin(), clusters.end(), [](const Maximum& a, const Maximum& b) {
    return a.angles.flat() < b.angles.flat();
  });
  return clusters;
}

namespace {

OptimizationResult run_starts(const Objective& f, const std::vector<Angles>& starts, const MultistartOptions& options) {
  std::vector<std::optional<AscentResult>> results(starts.size());
  parallel_for(f, static_cast<int>(starts.size()), options.threads, [&](int i, Objective& local) {
    try {
      results[static_cast<size_t>(i)] = gradient_ascent(local, starts[static_cast<size_t>(i)], options.ascent);
    } catch (const ConvergenceError&) {
    }
  });
  OptimizationResult out;
  out.starts_used = static_cast<int>(starts.size());
  std::vector<Maximum> ends;
  for (const auto& r : results) {
    if (!r) {
      ++out.failed_starts;
      continue;
    }
    ends.push_back({r->angles, r->value});
    if (!out.converged || r->value > out.best_value) {
      out.best_value = r->value;
      out.best_angles = r->angles;
      out.converged = true;
    }
  }
  if (!out.converged) {
    throw ConvergenceError("all " + std::to_string(starts.size()) + " gradient ascent starts failed to converge");
  }
  out.all_maxima = cluster_maxima(ends, options.cluster_radius, options.keep_margin);
  return out;
}

}  // namespace

OptimizationResult multistart(const Objective& f, const MultistartOptions& options) {
  if (options.starts < 1) throw DomainError("multistart needs at least one start");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> gamma(-kPi, kPi);
  std::uniform_real_distribution<double> beta(-kPi / 4, kPi / 4);
  std::vector<Angles> starts;
  for (int s = 0; s < options.starts; ++s) {
    std::vector<double> g;
    std::vector<double> b;
    for (int k = 0; k < f.p(); ++k) g.push_back(gamma(rng));
    for (int k = 0; k < f.p(); ++k) b.push_back(beta(rng));
    starts.emplace_back(std::move(g), std::move(b));
  }
  return run_starts(f, starts, options);
}

std::vector<Maximum> find_all_maxima(const Objective& f, int mesh_density, const MultistartOptions& options) {
  if (mesh_density < 4) throw DomainError("mesh density must be at least 4 per axis");
  const int dims = 2 * f.p();
  std::int64_t total = 1;
  for (int d = 0; d < dims; ++d) total *= mesh_density;
  std::vector<Angles> starts;
  for (std::int64_t i = 0; i < total; ++i) {
    std::vector<double> flat(static_cast<size_t>(dims));
    std::int64_t rest = i;
    for (int d = 0; d < dims; ++d) {
      const double u = (static_cast<double>(rest % mesh_density) + 0.5) / mesh_density;
      rest /= mesh_density;
      flat[static_cast<size_t>(d)] = d < f.p() ? -kPi + 2 * kPi * u : -kPi / 4 + kPi / 2 * u;
    }
    starts.push_back(Angles::from_flat(flat));
  }
  return run_starts(f, starts, options).all_maxima;
}

}  // namespace qaoab
