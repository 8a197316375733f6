#pragma once

// The weighted space of holomorphic psi with finite sup of (1-|z|^2)^2 |psi|,
// its duality pairing against integrable holomorphic functions, the
// reproducing formula for the weight-4 kernel, coefficient functionals, and
// the kernel transform L mapping bounded densities to elements of the space.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "krzyz/config.hpp"
#include "krzyz/quadrature.hpp"
#include "krzyz/series.hpp"

namespace krzyz {

// <phi, psi> = integral over the disk of (1-|z|^2)^2 conj(psi) phi dA.
template <class Scalar>
std::complex<Scalar> bergman_pair(const PowerSeries<Scalar>& phi, const PowerSeries<Scalar>& psi,
                                  const DiskGrid<Scalar>& grid) {
  using Complex = std::complex<Scalar>;
  return integrate(grid, [&](Complex z) {
    const Scalar w = Scalar(1) - std::norm(z);
    return Complex(w * w) * std::conj(eval(psi, z)) * eval(phi, z);
  });
}

// sup over the disk of (1-|z|^2)^2 |psi(z)|, by a 64 x 1024 lattice scan
// followed by alternating golden-section refinement in r and theta.
template <class Scalar>
Scalar bergman_norm(const PowerSeries<Scalar>& psi, Eigen::Index n_r = 64,
                    Eigen::Index n_theta = 1024) {
  const auto weighted = [&](Scalar r, Scalar th) {
    const Scalar w = Scalar(1) - r * r;
    return w * w * std::abs(eval(psi, std::polar(r, th)));
  };
  Scalar best = 0, best_r = 0, best_th = 0;
  for (Eigen::Index i = 0; i < n_r; ++i) {
    const Scalar r = Scalar(i) / Scalar(n_r);
    for (Eigen::Index j = 0; j < n_theta; ++j) {
      const Scalar th = Scalar(2) * Scalar(EIGEN_PI) * Scalar(j) / Scalar(n_theta);
      const Scalar val = weighted(r, th);
      if (val > best) {
        best = val;
        best_r = r;
        best_th = th;
      }
    }
  }
  const Scalar dr = Scalar(1) / Scalar(n_r);
  const Scalar dth = Scalar(2) * Scalar(EIGEN_PI) / Scalar(n_theta);
  Scalar r = best_r, th = best_th;
  for (int round = 0; round < 20; ++round) {
    const Scalar prev = best;
    // radial pass, bracket clipped to [0, 1]
    const Scalar rlo = std::max(Scalar(0), r - dr), rhi = std::min(Scalar(1), r + dr);
    const Scalar inv_phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
    Scalar a = rlo, b = rhi;
    for (int it = 0; it < 60; ++it) {
      const Scalar x1 = b - inv_phi * (b - a);
      const Scalar x2 = a + inv_phi * (b - a);
      if (weighted(x1, th) < weighted(x2, th)) a = x1; else b = x2;
    }
    r = (a + b) / Scalar(2);
    // angular pass
    a = th - dth;
    b = th + dth;
    for (int it = 0; it < 60; ++it) {
      const Scalar x1 = b - inv_phi * (b - a);
      const Scalar x2 = a + inv_phi * (b - a);
      if (weighted(r, x1) < weighted(r, x2)) a = x1; else b = x2;
    }
    th = (a + b) / Scalar(2);
    best = std::max(best, weighted(r, th));
    if (best - prev <= Scalar(1e-13) * (Scalar(1) + best)) break;
  }
  return best;
}

// Reproducing formula: (3/pi) * integral of (1-|z|^2)^2 psi(z) / (1 - conj(z) zeta)^4
// recovers psi(zeta). Restricted to |zeta| <= 0.9 for kernel conditioning.
template <class Scalar>
std::complex<Scalar> reproduce(const PowerSeries<Scalar>& psi, std::complex<Scalar> zeta,
                               const DiskGrid<Scalar>& grid) {
  using Complex = std::complex<Scalar>;
  if (std::abs(zeta) > Scalar(0.9))
    throw std::invalid_argument("reproduce: need |zeta| <= 0.9");
  const Complex integral = integrate(grid, [&](Complex z) {
    const Scalar w = Scalar(1) - std::norm(z);
    const Complex d = Complex(1) - std::conj(z) * zeta;
    const Complex d2 = d * d;
    return Complex(w * w) * eval(psi, z) / (d2 * d2);
  });
  return Scalar(3) / Scalar(EIGEN_PI) * integral;
}

template <class Scalar = double>
struct CoefficientFunctional {
  std::complex<Scalar> coefficient;
  Scalar constant;  // calibrated normalization in front of the moment integral
};

// Coefficient c_p of psi as constant * integral of (1-|z|^2)^2 psi(z) conj(z)^p.
// The constant is calibrated at runtime so the identity is exact on
// psi = z^p; differentiating the reproducing kernel gives the closed form
// (p+1)(p+2)(p+3)/(2 pi), and the calibration is asserted against it in the
// verification reports.
template <class Scalar>
CoefficientFunctional<Scalar> coeff_functional(Eigen::Index p, const PowerSeries<Scalar>& psi,
                                               const DiskGrid<Scalar>& grid) {
  using Complex = std::complex<Scalar>;
  if (p < 0) throw std::invalid_argument("coeff_functional: p must be >= 0");
  const auto moment = [&](const PowerSeries<Scalar>& g) {
    return integrate(grid, [&](Complex z) {
      const Scalar w = Scalar(1) - std::norm(z);
      Complex zp = 1;
      for (Eigen::Index k = 0; k < p; ++k) zp *= std::conj(z);
      return Complex(w * w) * eval(g, z) * zp;
    });
  };
  const Complex unit = moment(PowerSeries<Scalar>::monomial(p, p));
  if (std::abs(unit) <= Tol<Scalar>::zero)
    throw std::invalid_argument("coeff_functional: grid does not resolve degree p");
  const Scalar constant = Scalar(1) / unit.real();
  return {constant * moment(psi), constant};
}

// The kernel transform mu -> psi(zeta) = (3/pi) * integral of
// mu(z) / (1 - conj(z) zeta)^4, expanded coefficientwise: coefficient k is
// (3/pi) binom(k+3, 3) * integral of mu(z) conj(z)^k.
template <class Scalar>
PowerSeries<Scalar> apply_L(const BeltramiField<Scalar>& mu, Eigen::Index order) {
  using Complex = std::complex<Scalar>;
  typename PowerSeries<Scalar>::CoeffVector c(order + 1);
  Eigen::Array<Complex, Eigen::Dynamic, 1> zbar_pow(mu.grid.size());
  zbar_pow.setOnes();
  for (Eigen::Index k = 0; k <= order; ++k) {
    detail::KahanSum<Scalar> acc;
    for (Eigen::Index i = 0; i < mu.grid.size(); ++i)
      acc.add(Complex(mu.grid.weights[i]) * mu.samples[i] * zbar_pow[i]);
    const Scalar binom = Scalar((k + 1) * (k + 2) * (k + 3)) / Scalar(6);
    c[k] = Scalar(3) / Scalar(EIGEN_PI) * binom * acc.sum;
    if (k < order)
      for (Eigen::Index i = 0; i < mu.grid.size(); ++i) zbar_pow[i] *= std::conj(mu.grid.nodes[i]);
  }
  return PowerSeries<Scalar>(std::move(c));
}

}  // namespace krzyz
