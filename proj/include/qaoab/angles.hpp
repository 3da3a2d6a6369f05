#pragma once

#include <numbers>
#include <vector>

namespace qaoab {

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

// Variational parameters in radians.
struct Angles {
  std::vector<double> gammas;
  std::vector<double> betas;

  Angles() = default;
  Angles(std::vector<double> g, std::vector<double> b);

  int p() const { return static_cast<int>(gammas.size()); }

  static Angles from_degrees(const std::vector<double>& gammas_deg, const std::vector<double>& betas_deg);
  // (gamma_1..gamma_p, beta_1..beta_p).
  static Angles from_flat(const std::vector<double>& flat);
  std::vector<double> flat() const;

  // gamma into [-pi, pi), beta into [-pi/4, pi/4).
  Angles reduced() const;
  Angles negated() const;
  std::vector<double> gammas_degrees() const;
  std::vector<double> betas_degrees() const;
};

// Tree optimum used as the fixed angles at depth p (0, 1 or 2). Depth 0 has
// no angles.
Angles fixed_angles(int p);

// Wraps x into [lo, lo + period).
double wrap(double x, double lo, double period);

// Largest componentwise distance on the reduced torus, in radians.
double torus_distance(const Angles& a, const Angles& b);

}  // namespace qaoab
