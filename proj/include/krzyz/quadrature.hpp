#pragma once

// Quadrature on the unit disk: Gauss-Legendre nodes in the radial variable
// u = r^2 crossed with a uniform angular rule. The radial rule is exact for
// polynomials in r^2 up to degree 2 n_r - 1 and the angular rule for
// trigonometric polynomials up to degree n_theta - 1, which covers every
// integrand this library pairs against the weight (1-|z|^2)^2.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "krzyz/config.hpp"

namespace krzyz {

// Gauss-Legendre nodes and weights on [0, 1] by the Golub-Welsch eigenvalue
// method; the weights sum to 1.
template <class Scalar = double>
std::pair<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>
gauss_legendre_01(Eigen::Index n) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
  Vector diag = Vector::Zero(n);
  Vector sub(n - 1 > 0 ? n - 1 : 0);
  for (Eigen::Index k = 1; k < n; ++k)
    sub[k - 1] = Scalar(k) / std::sqrt(Scalar(4 * k * k - 1));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  Vector nodes(n), weights(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    nodes[i] = (solver.eigenvalues()[i] + Scalar(1)) / Scalar(2);
    const Scalar q0 = solver.eigenvectors()(0, i);
    weights[i] = q0 * q0;  // = (2 q0^2) / 2 after mapping [-1,1] -> [0,1]
  }
  return {nodes, weights};
}

// Product quadrature grid for integrals over the unit disk with respect to
// area measure dx dy. Nodes are stored flattened, radius-major; the weights
// sum to pi.
template <class Scalar = double>
struct DiskGrid {
  using Complex = std::complex<Scalar>;
  using ComplexArray = Eigen::Array<Complex, Eigen::Dynamic, 1>;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Eigen::Index n_radial = 0;
  Eigen::Index n_angular = 0;
  ComplexArray nodes;
  Array weights;

  DiskGrid() = default;

  DiskGrid(Eigen::Index n_r, Eigen::Index n_theta) : n_radial(n_r), n_angular(n_theta) {
    if (n_r < 8 || n_theta < 16)
      throw std::invalid_argument("DiskGrid: need n_r >= 8 and n_theta >= 16");
    const auto [u, w] = gauss_legendre_01<Scalar>(n_r);
    nodes.resize(n_r * n_theta);
    weights.resize(n_r * n_theta);
    const Scalar wtheta = Scalar(2) * Scalar(EIGEN_PI) / Scalar(n_theta);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < n_r; ++i) {
      const Scalar r = std::sqrt(u[i]);
      const Scalar wr = w[i] / Scalar(2);
      for (Eigen::Index j = 0; j < n_theta; ++j, ++idx) {
        const Scalar th = Scalar(2) * Scalar(EIGEN_PI) * Scalar(j) / Scalar(n_theta);
        nodes[idx] = std::polar(r, th);
        weights[idx] = wr * wtheta;
      }
    }
  }

  Eigen::Index size() const { return nodes.size(); }
};

using DiskGridd = DiskGrid<double>;

namespace detail {

// Compensated (Kahan) accumulation in a fixed node order, so concurrent
// callers that share a grid still reproduce sums bit for bit.
template <class Scalar>
struct KahanSum {
  std::complex<Scalar> sum{0, 0};
  std::complex<Scalar> carry{0, 0};

  void add(std::complex<Scalar> x) {
    const std::complex<Scalar> y = x - carry;
    const std::complex<Scalar> t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail

// Integral of a node-sampled integrand against the grid weights.
template <class Scalar, class F>
std::complex<Scalar> integrate(const DiskGrid<Scalar>& grid, const F& f) {
  detail::KahanSum<Scalar> acc;
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    acc.add(std::complex<Scalar>(grid.weights[i]) * f(grid.nodes[i]));
  return acc.sum;
}

// A bounded density mu(z) sampled on a DiskGrid, with its sup norm cached.
template <class Scalar = double>
struct BeltramiField {
  using Complex = std::complex<Scalar>;
  using ComplexArray = Eigen::Array<Complex, Eigen::Dynamic, 1>;

  DiskGrid<Scalar> grid;
  ComplexArray samples;
  Scalar supnorm = 0;

  BeltramiField() = default;

  BeltramiField(DiskGrid<Scalar> grid_, ComplexArray samples_)
      : grid(std::move(grid_)), samples(std::move(samples_)) {
    if (samples.size() != grid.size())
      throw std::invalid_argument("BeltramiField: samples do not match the grid");
    for (Eigen::Index i = 0; i < samples.size(); ++i) {
      const Scalar m = std::abs(samples[i]);
      if (!std::isfinite(m)) throw std::invalid_argument("BeltramiField: non-finite sample");
      supnorm = std::max(supnorm, m);
    }
  }

  template <class F>
  static BeltramiField sample(DiskGrid<Scalar> grid_, const F& f) {
    ComplexArray s(grid_.size());
    for (Eigen::Index i = 0; i < grid_.size(); ++i) s[i] = f(grid_.nodes[i]);
    return BeltramiField(std::move(grid_), std::move(s));
  }
};

using BeltramiFieldd = BeltramiField<double>;

}  // namespace krzyz
