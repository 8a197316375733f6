#pragma once

// Schwarzian-derivative machinery: the Schwarzian of interior series and of
// exterior series normalized at infinity, the transfer of a disk function to
// an exterior Schwarzian with its weighted norm, the Ahlfors-Weill Beltrami
// coefficient for small Schwarzian norm, and Teichmuller-form densities
// k |phi| / phi aligned with a holomorphic density.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "krzyz/config.hpp"
#include "krzyz/metrics.hpp"
#include "krzyz/quadrature.hpp"
#include "krzyz/series.hpp"

namespace krzyz {

struct DegenerateDerivative : Error {
  DegenerateDerivative() : Error("variation: derivative vanishes at the expansion point") {}
};

struct NormTooLarge : Error {
  NormTooLarge() : Error("variation: exterior Schwarzian norm is not below 2") {}
};

struct ZeroDensity : Error {
  ZeroDensity() : Error("variation: quadratic density is identically zero") {}
};

// F(zeta) = zeta + b_1/zeta + b_2/zeta^2 + ..., holomorphic for |zeta| > 1
// and normalized at infinity.
template <class Scalar = double>
struct ExteriorSeries {
  using Complex = std::complex<Scalar>;
  using CoeffVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  CoeffVector tail;  // b_1, b_2, ...

  ExteriorSeries() = default;
  explicit ExteriorSeries(CoeffVector tail_) : tail(std::move(tail_)) {}

  Eigen::Index order() const { return tail.size(); }

  Complex operator()(Complex zeta) const {
    Complex acc = 0;
    for (Eigen::Index k = tail.size() - 1; k >= 0; --k) acc = (acc + tail[k]) / zeta;
    return zeta + acc;
  }
};

using ExteriorSeriesd = ExteriorSeries<double>;

// S_F = (F''/F')' - (F''/F')^2 / 2; identically zero exactly for Mobius maps.
template <class Scalar>
PowerSeries<Scalar> schwarzian(const PowerSeries<Scalar>& f) {
  const PowerSeries<Scalar> d1 = derivative(f);
  if (std::abs(d1.coeff(0)) <= Tol<Scalar>::zero) throw DegenerateDerivative{};
  const PowerSeries<Scalar> q = div(derivative(d1), d1);
  return sub(derivative(q), scale(mul(q, q), std::complex<Scalar>(Scalar(1) / Scalar(2))));
}

// Schwarzian of an exterior series, returned as the interior density psi with
// S_F(zeta) = psi(1/zeta) / zeta^4. Uses the Mobius invariance S_{1/G} = S_G
// applied to G(u) = F(1/u), whose reciprocal is a regular series vanishing
// at 0 with unit derivative.
template <class Scalar>
PowerSeries<Scalar> schwarzian(const ExteriorSeries<Scalar>& f) {
  using Complex = std::complex<Scalar>;
  // generous padding: the Schwarzian of a rational tail has an infinite
  // expansion, and callers evaluate it up to |u| ~ 1/2
  const Eigen::Index n = f.order() + 40;
  // 1/G(u) = u / (1 + b_1 u^2 + b_2 u^3 + ...)
  typename PowerSeries<Scalar>::CoeffVector den =
      PowerSeries<Scalar>::CoeffVector::Zero(n + 1);
  den[0] = Complex(1);
  for (Eigen::Index k = 0; k < f.tail.size() && k + 2 <= n; ++k) den[k + 2] = f.tail[k];
  const PowerSeries<Scalar> h =
      mul(PowerSeries<Scalar>::identity(n), inverse(PowerSeries<Scalar>(std::move(den))));
  return schwarzian(h);
}

// Evaluation rule and weighted norm of the exterior transfer
// S_F(zeta) = psi(1/zeta) / zeta^4 of a disk function psi.
template <class Scalar = double>
struct ExteriorTransfer {
  using Complex = std::complex<Scalar>;

  PowerSeries<Scalar> psi;
  Scalar norm = 0;  // sup over |zeta| > 1 of (|zeta|^2 - 1)^2 |S_F(zeta)|

  Complex operator()(Complex zeta) const {
    if (std::abs(zeta) <= Scalar(1))
      throw std::invalid_argument("ExteriorTransfer: zeta must lie outside the closed disk");
    const Complex z2 = zeta * zeta;
    return eval(psi, Complex(1) / zeta) / (z2 * z2);
  }
};

// Builds the transfer rule and computes its norm: a dense scan of
// |zeta| in (1, 4] plus the tail region |zeta| > 4 handled through the
// substitution u = 1/zeta (the weighted kernel extends analytically to the
// closed quarter-disk in u, so the tail sup is a bounded scan as well).
template <class Scalar>
ExteriorTransfer<Scalar> transfer_exterior(const PowerSeries<Scalar>& psi) {
  using Complex = std::complex<Scalar>;
  ExteriorTransfer<Scalar> t{psi, Scalar(0)};
  const auto weighted_main = [&](Scalar rho, Scalar th) {
    const Complex zeta = std::polar(rho, th);
    const Scalar w = rho * rho - Scalar(1);
    return w * w * std::abs(t(zeta));
  };
  // u-side expression of the same weighted modulus, valid down to u = 0
  const auto weighted_tail = [&](Scalar ur, Scalar th) {
    const Complex u = std::polar(ur, th);
    const Scalar w = Scalar(1) - ur * ur;
    return w * w * std::abs(eval(psi, u));
  };
  Scalar best = 0, best_r = 0, best_th = 0;
  bool best_tail = false;
  const Eigen::Index n_r = 64, n_th = 1024;
  for (Eigen::Index i = 1; i <= n_r; ++i) {
    const Scalar rho = Scalar(1) + Scalar(3) * Scalar(i) / Scalar(n_r);
    for (Eigen::Index j = 0; j < n_th; ++j) {
      const Scalar th = Scalar(2) * Scalar(EIGEN_PI) * Scalar(j) / Scalar(n_th);
      const Scalar val = weighted_main(rho, th);
      if (val > best) { best = val; best_r = rho; best_th = th; best_tail = false; }
    }
  }
  const Eigen::Index m_r = 16, m_th = 256;
  for (Eigen::Index i = 0; i <= m_r; ++i) {
    const Scalar ur = Scalar(0.25) * Scalar(i) / Scalar(m_r);
    for (Eigen::Index j = 0; j < m_th; ++j) {
      const Scalar th = Scalar(2) * Scalar(EIGEN_PI) * Scalar(j) / Scalar(m_th);
      const Scalar val = weighted_tail(ur, th);
      if (val > best) { best = val; best_r = ur; best_th = th; best_tail = true; }
    }
  }
  if (best <= Scalar(0)) {
    t.norm = 0;
    return t;
  }
  // golden-section polish around the best sample, alternating radius/angle
  const Scalar inv_phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  const auto f = [&](Scalar r, Scalar th) {
    return best_tail ? weighted_tail(r, th) : weighted_main(r, th);
  };
  Scalar r = best_r, th = best_th;
  const Scalar dr = best_tail ? Scalar(0.25) / Scalar(m_r) : Scalar(3) / Scalar(n_r);
  const Scalar dth = Scalar(2) * Scalar(EIGEN_PI) / Scalar(best_tail ? m_th : n_th);
  const Scalar rmin = best_tail ? Scalar(0) : Scalar(1) + Scalar(1e-12);
  const Scalar rmax = best_tail ? Scalar(0.25) : Scalar(4);
  for (int round = 0; round < 20; ++round) {
    const Scalar prev = best;
    Scalar a = std::max(rmin, r - dr), b = std::min(rmax, r + dr);
    for (int it = 0; it < 60; ++it) {
      const Scalar x1 = b - inv_phi * (b - a);
      const Scalar x2 = a + inv_phi * (b - a);
      if (f(x1, th) < f(x2, th)) a = x1; else b = x2;
    }
    r = (a + b) / Scalar(2);
    a = th - dth;
    b = th + dth;
    for (int it = 0; it < 60; ++it) {
      const Scalar x1 = b - inv_phi * (b - a);
      const Scalar x2 = a + inv_phi * (b - a);
      if (f(r, x1) < f(r, x2)) a = x1; else b = x2;
    }
    th = (a + b) / Scalar(2);
    best = std::max(best, f(r, th));
    if (best - prev <= Scalar(1e-13) * (Scalar(1) + best)) break;
  }
  t.norm = best;
  return t;
}

// Ahlfors-Weill Beltrami coefficient of the transfer of psi, sampled on a
// grid over the disk:
//   mu(zeta) = -(1/2) (1-|zeta|^2)^2 (zeta^2/conj(zeta)^2) S_F(1/conj(zeta))
//            = -(1/2) (1-|zeta|^2)^2 |zeta|^4 psi(conj(zeta)),
// defined when the exterior norm stays below 2 (the univalence regime).
template <class Scalar>
BeltramiField<Scalar> ahlfors_weill(const PowerSeries<Scalar>& psi, DiskGrid<Scalar> grid) {
  using Complex = std::complex<Scalar>;
  const ExteriorTransfer<Scalar> t = transfer_exterior(psi);
  if (t.norm >= Scalar(2)) throw NormTooLarge{};
  return BeltramiField<Scalar>::sample(std::move(grid), [&](Complex z) {
    const Scalar r2 = std::norm(z);
    const Scalar w = Scalar(1) - r2;
    return Complex(-w * w * r2 * r2 / Scalar(2)) * eval(psi, std::conj(z));
  });
}

// Teichmuller-form density r t |phi(z)| / phi(z) for unimodular t; nodes
// where phi vanishes get 0.
template <class Scalar>
BeltramiField<Scalar> teichmuller_mu(const PowerSeries<Scalar>& phi, Scalar r,
                                     std::complex<Scalar> t, DiskGrid<Scalar> grid) {
  using Complex = std::complex<Scalar>;
  if (!(r > Scalar(0) && r < Scalar(1)))
    throw std::invalid_argument("teichmuller_mu: need r in (0,1)");
  if (std::abs(std::abs(t) - Scalar(1)) > Tol<Scalar>::zero * Scalar(100))
    throw std::invalid_argument("teichmuller_mu: t must be unimodular");
  if (phi.max_abs_coeff() <= Tol<Scalar>::zero) throw ZeroDensity{};
  return BeltramiField<Scalar>::sample(std::move(grid), [&](Complex z) {
    const Complex v = eval(phi, z);
    if (std::abs(v) <= Tol<Scalar>::zero) return Complex(0);
    return r * t * std::abs(v) / v;
  });
}

}  // namespace krzyz
