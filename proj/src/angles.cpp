#include "qaoab/angles.hpp"

#include <algorithm>
#include <cmath>

#include "qaoab/errors.hpp"

namespace qaoab {

Angles::Angles(std::vector<double> g, std::vector<double> b) : gammas(std::move(g)), betas(std::move(b)) {
  if (gammas.size() != betas.size()) throw DomainError("gamma and beta counts differ");
}

Angles Angles::from_degrees(const std::vector<double>& gammas_deg, const std::vector<double>& betas_deg) {
  std::vector<double> g;
  std::vector<double> b;
  for (const double x : gammas_deg) g.push_back(deg_to_rad(x));
  for (const double x : betas_deg) b.push_back(deg_to_rad(x));
  return Angles(std::move(g), std::move(b));
}

Angles Angles::from_flat(const std::vector<double>& flat) {
  if (flat.size() % 2 != 0) throw DomainError("flat angle vector must have even length");
  const auto half = static_cast<std::ptrdiff_t>(flat.size() / 2);
  return Angles({flat.begin(), flat.begin() + half}, {flat.begin() + half, flat.end()});
}

std::vector<double> Angles::flat() const {
  std::vector<double> out = gammas;
  out.insert(out.end(), betas.begin(), betas.end());
  return out;
}

double wrap(double x, double lo, double period) {
  double y = std::fmod(x - lo, period);
  if (y < 0) y += period;
  if (y >= period) y -= period;
  return lo + y;
}

Angles Angles::reduced() const {
  Angles out = *this;
  for (double& g : out.gammas) g = wrap(g, -kPi, 2 * kPi);
  for (double& b : out.betas) b = wrap(b, -kPi / 4, kPi / 2);
  return out;
}

Angles Angles::negated() const {
  Angles out = *this;
  for (double& g : out.gammas) g = -g;
  for (double& b : out.betas) b = -b;
  return out;
}

std::vector<double> Angles::gammas_degrees() const {
  std::vector<double> out;
  for (const double g : gammas) out.push_back(rad_to_deg(g));
  return out;
}

std::vector<double> Angles::betas_degrees() const {
  std::vector<double> out;
  for (const double b : betas) out.push_back(rad_to_deg(b));
  return out;
}

double torus_distance(const Angles& a, const Angles& b) {
  if (a.p() != b.p()) throw DomainError("angle depth mismatch");
  double worst = 0;
  auto circ = [](double x, double y, double period) {
    const double d = std::fabs(wrap(x - y, -period / 2, period));
    return d;
  };
  for (int k = 0; k < a.p(); ++k) {
    worst = std::max(worst, circ(a.gammas[static_cast<size_t>(k)], b.gammas[static_cast<size_t>(k)], 2 * kPi));
    worst = std::max(worst, circ(a.betas[static_cast<size_t>(k)], b.betas[static_cast<size_t>(k)], kPi / 2));
  }
  return worst;
}

Angles fixed_angles(int p) {
  switch (p) {
    case 0:
      return {};
    case 1:
      // beta = pi/8; gamma = arctan(1/sqrt 2).
      return Angles({std::atan(1 / std::sqrt(2.0))}, {kPi / 8});
    case 2:
      return Angles::from_degrees({27.95091702, 51.44239614}, {31.79366803, 16.75218245});
    default:
      throw DomainError("fixed angles are tabulated for depth 0 to 2");
  }
}

}  // namespace qaoab
