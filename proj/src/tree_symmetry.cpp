#include "qaoab/tree_symmetry.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "qaoab/errors.hpp"

namespace qaoab {
namespace {

using Mat = Eigen::MatrixXcd;

inline std::int64_t tri(std::int64_t i, std::int64_t j) { return j * (j + 1) / 2 + i; }

Mat rotation(double beta) {
  Mat r(2, 2);
  const std::complex<double> c(std::cos(beta), 0.0);
  const std::complex<double> s(0.0, -std::sin(beta));
  r << c, s, s, c;
  return r;
}

Mat rotation_derivative(double beta) {
  Mat r(2, 2);
  const std::complex<double> c(-std::sin(beta), 0.0);
  const std::complex<double> s(0.0, -std::cos(beta));
  r << c, s, s, c;
  return r;
}

// Effective branch operator one height up, acting on per-state amplitudes.
Mat lift(const Mat& a, const Mat& r) {
  const auto d = a.rows();
  const auto pairs = d * (d + 1) / 2;
  Mat m(2 * pairs, 2 * pairs);
  for (int sp = 0; sp < 2; ++sp) {
    for (std::int64_t jp = 0; jp < d; ++jp) {
      for (std::int64_t ip = 0; ip <= jp; ++ip) {
        const auto row = sp * pairs + tri(ip, jp);
        for (int s = 0; s < 2; ++s) {
          for (std::int64_t j = 0; j < d; ++j) {
            for (std::int64_t i = 0; i <= j; ++i) {
              std::complex<double> v = a(ip, i) * a(jp, j);
              if (i != j) v += a(ip, j) * a(jp, i);
              m(row, s * pairs + tri(i, j)) = r(sp, s) * v;
            }
          }
        }
      }
    }
  }
  return m;
}

// Derivative of lift(a, r) given the derivatives da and dr.
Mat lift_derivative(const Mat& a, const Mat& da, const Mat& r, const Mat& dr) {
  const auto d = a.rows();
  const auto pairs = d * (d + 1) / 2;
  Mat m(2 * pairs, 2 * pairs);
  for (int sp = 0; sp < 2; ++sp) {
    for (std::int64_t jp = 0; jp < d; ++jp) {
      for (std::int64_t ip = 0; ip <= jp; ++ip) {
        const auto row = sp * pairs + tri(ip, jp);
        for (int s = 0; s < 2; ++s) {
          for (std::int64_t j = 0; j < d; ++j) {
            for (std::int64_t i = 0; i <= j; ++i) {
              std::complex<double> v = a(ip, i) * a(jp, j);
              std::complex<double> dv = da(ip, i) * a(jp, j) + a(ip, i) * da(jp, j);
              if (i != j) {
                v += a(ip, j) * a(jp, i);
                dv += da(ip, j) * a(jp, i) + a(ip, j) * da(jp, i);
              }
              m(row, s * pairs + tri(i, j)) = dr(sp, s) * v + r(sp, s) * dv;
            }
          }
        }
      }
    }
  }
  return m;
}

// Applies the height-p branch operator, given its child operator a, to every
// column of x in place.
void apply_structured(Mat& x, const Mat& a, const Mat& r) {
  const auto d = a.rows();
  const auto pairs = d * (d + 1) / 2;
  const Mat at = a.transpose();
  Mat xs[2] = {Mat(d, d), Mat(d, d)};
  Mat z(d, d);
  for (Eigen::Index col = 0; col < x.cols(); ++col) {
    for (int s = 0; s < 2; ++s) {
      for (std::int64_t j = 0; j < d; ++j) {
        for (std::int64_t i = 0; i <= j; ++i) {
          const auto v = x(s * pairs + tri(i, j), col);
          xs[s](i, j) = v;
          xs[s](j, i) = v;
        }
      }
    }
    for (int sp = 0; sp < 2; ++sp) {
      z.noalias() = r(sp, 0) * xs[0] + r(sp, 1) * xs[1];
      const Mat y = a * z * at;
      for (std::int64_t j = 0; j < d; ++j) {
        for (std::int64_t i = 0; i <= j; ++i) x(sp * pairs + tri(i, j), col) = y(i, j);
      }
    }
  }
}

struct KahanSum {
  double sum = 0;
  double carry = 0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

SymBasis build_sym_basis(int p) {
  if (p < 0) throw DomainError("depth must be non-negative");
  if (p > kMaxSymmetricDepth) {
    throw CapacityError("symmetric tree simulation supports depth up to 3; depth 4 needs about 2^42 states");
  }
  SymBasis b;
  b.depth = p;
  b.branch_dims.push_back(2);
  b.spin.push_back({0, 1});
  b.weight.push_back({1.0, 1.0});
  b.cut.push_back({0, 0});
  for (int h = 1; h <= p; ++h) {
    const std::int64_t d = b.branch_dims.back();
    const std::int64_t pairs = d * (d + 1) / 2;
    std::vector<std::uint8_t> spin(static_cast<size_t>(2 * pairs));
    std::vector<double> weight(static_cast<size_t>(2 * pairs));
    std::vector<std::uint8_t> cut(static_cast<size_t>(2 * pairs));
    const auto& cs = b.spin.back();
    const auto& cw = b.weight.back();
    const auto& cc = b.cut.back();
    for (int s = 0; s < 2; ++s) {
      for (std::int64_t j = 0; j < d; ++j) {
        for (std::int64_t i = 0; i <= j; ++i) {
          const auto k = static_cast<size_t>(s * pairs + tri(i, j));
          const auto ui = static_cast<size_t>(i);
          const auto uj = static_cast<size_t>(j);
          spin[k] = static_cast<std::uint8_t>(s);
          weight[k] = cw[ui] * cw[uj] * (i == j ? 1.0 : 2.0);
          cut[k] = static_cast<std::uint8_t>(cc[ui] + cc[uj] + (s != cs[ui]) + (s != cs[uj]));
        }
      }
    }
    b.branch_dims.push_back(2 * pairs);
    b.spin.push_back(std::move(spin));
    b.weight.push_back(std::move(weight));
    b.cut.push_back(std::move(cut));
  }
  const std::int64_t top = b.branch_dims.back();
  b.dimension = top * (top + 1) / 2;
  return b;
}

TreeEvaluator::TreeEvaluator(int p) : basis_(build_sym_basis(p)) {}

namespace {

// Evolves the full symmetric amplitude matrix over pairs of height-p branches.
Mat evolve_tree(const SymBasis& b, const Angles& a) {
  const int p = b.depth;
  if (a.p() != p) throw DomainError("angle depth must equal the tree depth");
  const auto dim = static_cast<Eigen::Index>(b.branch_dims.back());
  const int qubits = 2 * ((1 << (p + 1)) - 1);
  Mat phi = Mat::Constant(dim, dim, std::complex<double>(std::pow(2.0, -0.5 * qubits), 0.0));
  const auto& spin = b.spin.back();
  const auto& cut = b.cut.back();
  const int max_cut = 2 * qubits;
  for (int k = 0; k < p; ++k) {
    std::vector<std::complex<double>> ph(static_cast<size_t>(max_cut) + 1);
    for (int c = 0; c <= max_cut; ++c) ph[static_cast<size_t>(c)] = std::polar(1.0, -a.gammas[static_cast<size_t>(k)] * c);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto uc = static_cast<size_t>(col);
      for (Eigen::Index row = 0; row < dim; ++row) {
        const auto ur = static_cast<size_t>(row);
        phi(row, col) *= ph[static_cast<size_t>(cut[ur] + cut[uc] + (spin[ur] != spin[uc]))];
      }
    }
    const Mat r = rotation(a.betas[static_cast<size_t>(k)]);
    if (p <= 2) {
      Mat m = r;
      for (int h = 1; h <= p; ++h) m = lift(m, r);
      phi = (m * phi * m.transpose()).eval();
    } else {
      Mat child = r;
      for (int h = 1; h < p; ++h) child = lift(child, r);
      apply_structured(phi, child, r);
      phi.transposeInPlace();
      apply_structured(phi, child, r);
      phi.transposeInPlace();
    }
  }
  return phi;
}

}  // namespace

double TreeEvaluator::value(const Angles& a) const {
  const Mat phi = evolve_tree(basis_, a);
  const auto& spin = basis_.spin.back();
  const auto& w = basis_.weight.back();
  KahanSum f;
  for (Eigen::Index col = 0; col < phi.cols(); ++col) {
    for (Eigen::Index row = 0; row < phi.rows(); ++row) {
      if (spin[static_cast<size_t>(row)] == spin[static_cast<size_t>(col)]) continue;
      f.add(w[static_cast<size_t>(row)] * w[static_cast<size_t>(col)] * std::norm(phi(row, col)));
    }
  }
  return f.sum;
}

double TreeEvaluator::evolved_norm(const Angles& a) const {
  const Mat phi = evolve_tree(basis_, a);
  const auto& w = basis_.weight.back();
  KahanSum n;
  for (Eigen::Index col = 0; col < phi.cols(); ++col) {
    for (Eigen::Index row = 0; row < phi.rows(); ++row) {
      n.add(w[static_cast<size_t>(row)] * w[static_cast<size_t>(col)] * std::norm(phi(row, col)));
    }
  }
  return std::sqrt(n.sum);
}

double TreeEvaluator::value_and_gradient(const Angles& a, std::vector<double>& grad) const {
  const int p = basis_.depth;
  if (a.p() != p) throw DomainError("angle depth must equal the tree depth");
  if (p > 2) throw CapacityError("exact tree gradient supports depth up to 2");
  const auto dim = static_cast<Eigen::Index>(basis_.branch_dims.back());
  const int qubits = 2 * ((1 << (p + 1)) - 1);
  const auto& spin = basis_.spin.back();
  const auto& cut = basis_.cut.back();
  const auto& w = basis_.weight.back();

  Eigen::MatrixXd c(dim, dim);
  Eigen::MatrixXd obs(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto uc = static_cast<size_t>(col);
    for (Eigen::Index row = 0; row < dim; ++row) {
      const auto ur = static_cast<size_t>(row);
      c(row, col) = cut[ur] + cut[uc] + (spin[ur] != spin[uc]);
      obs(row, col) = spin[ur] != spin[uc] ? w[ur] * w[uc] : 0.0;
    }
  }

  std::vector<Mat> mixers;
  std::vector<Mat> mixer_derivs;
  std::vector<Mat> phases;
  std::vector<Mat> after_phase;
  Mat phi = Mat::Constant(dim, dim, std::complex<double>(std::pow(2.0, -0.5 * qubits), 0.0));
  for (int k = 0; k < p; ++k) {
    const double gamma = a.gammas[static_cast<size_t>(k)];
    const double beta = a.betas[static_cast<size_t>(k)];
    Mat d(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      for (Eigen::Index row = 0; row < dim; ++row) d(row, col) = std::polar(1.0, -gamma * c(row, col));
    }
    phi = phi.cwiseProduct(d);
    after_phase.push_back(phi);
    phases.push_back(std::move(d));
    const Mat r = rotation(beta);
    const Mat dr = rotation_derivative(beta);
    Mat m = r;
    Mat dm = dr;
    for (int h = 1; h <= p; ++h) {
      Mat next = lift(m, r);
      dm = lift_derivative(m, dm, r, dr);
      m = std::move(next);
    }
    phi = (m * phi * m.transpose()).eval();
    mixers.push_back(std::move(m));
    mixer_derivs.push_back(std::move(dm));
  }

  KahanSum f;
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (Eigen::Index row = 0; row < dim; ++row) f.add(obs(row, col) * std::norm(phi(row, col)));
  }

  // Reverse sweep; df = Re sum conj(g) * dphi.
  grad.assign(static_cast<size_t>(2 * p), 0.0);
  Mat g = 2.0 * obs.cast<std::complex<double>>().cwiseProduct(phi);
  const std::complex<double> minus_i(0.0, -1.0);
  for (int k = p - 1; k >= 0; --k) {
    const auto uk = static_cast<size_t>(k);
    const Mat& m = mixers[uk];
    const Mat& dm = mixer_derivs[uk];
    const Mat& x = after_phase[uk];
    const Mat dq = dm * x * m.transpose() + m * x * dm.transpose();
    grad[static_cast<size_t>(p) + uk] = g.cwiseProduct(dq.conjugate()).sum().real();
    g = (m.adjoint() * g * m.conjugate()).eval();
    const Mat dp = minus_i * c.cast<std::complex<double>>().cwiseProduct(x);
    grad[uk] = g.cwiseProduct(dp.conjugate()).sum().real();
    g = g.cwiseProduct(phases[uk].conjugate());
  }
  return f.sum;
}

double tree_edge_expectation(int p, const Angles& a) { return TreeEvaluator(p).value(a); }

}  // namespace qaoab
