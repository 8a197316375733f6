#pragma once

// The holomorphic universal cover kappa(z) = exp((z-1)/(z+1)) of the
// punctured disk, finite Blaschke products as the parametrized family of
// disk-to-disk covers, and the factorization f = kappa o fhat of a
// non-vanishing |f| <= 1 together with its inverse (the lift).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "krzyz/config.hpp"
#include "krzyz/series.hpp"

namespace krzyz {

struct VanishingFunction : Error {
  VanishingFunction() : Error("covering: function vanishes on the disk") {}
};

struct NormExceeded : Error {
  NormExceeded() : Error("covering: sup norm exceeds 1 beyond tolerance") {}
};

struct ConstantOnBoundary : Error {
  ConstantOnBoundary() : Error("covering: center of the Mobius shift lies on the boundary") {}
};

// z -> e^{i phase} (z - a) / (1 - conj(a) z), an automorphism of the disk.
template <class Scalar = double>
struct MobiusAutomorphism {
  using Complex = std::complex<Scalar>;

  Scalar phase = 0;
  Complex a = 0;  // the point sent to 0; |a| < 1

  MobiusAutomorphism() = default;
  MobiusAutomorphism(Scalar phase_, Complex a_) : phase(phase_), a(a_) {
    if (std::abs(a) >= Scalar(1)) throw ConstantOnBoundary{};
  }

  static MobiusAutomorphism identity() { return {}; }

  Complex operator()(Complex z) const {
    return std::polar(Scalar(1), phase) * (z - a) / (Complex(1) - std::conj(a) * z);
  }

  MobiusAutomorphism inverse() const {
    return {std::fmod(-phase + Scalar(2) * Scalar(EIGEN_PI), Scalar(2) * Scalar(EIGEN_PI)),
            -a * std::polar(Scalar(1), phase)};
  }
};

using MobiusAutomorphismd = MobiusAutomorphism<double>;

// Mobius image of a series, by series division.
template <class Scalar>
PowerSeries<Scalar> apply(const MobiusAutomorphism<Scalar>& m, const PowerSeries<Scalar>& s) {
  using Complex = std::complex<Scalar>;
  const PowerSeries<Scalar> num = shift(s, Complex(-m.a));
  const PowerSeries<Scalar> den =
      shift(scale(s, -std::conj(m.a)), Complex(1));
  return scale(div(num, den), std::polar(Scalar(1), m.phase));
}

// rho e^{i theta} prod_j (z - a_j)/(1 - conj(a_j) z). rho = 0 is allowed and
// denotes the zero function (the collapsed cover).
template <class Scalar = double>
struct BlaschkeCover {
  using Complex = std::complex<Scalar>;
  using ZeroVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  ZeroVector zeros;
  Scalar rotation = 0;
  Scalar scale = 1;

  BlaschkeCover() = default;
  BlaschkeCover(ZeroVector zeros_, Scalar rotation_, Scalar scale_)
      : zeros(std::move(zeros_)), rotation(rotation_), scale(scale_) {
    if (scale < Scalar(0) || scale > Scalar(1))
      throw std::invalid_argument("BlaschkeCover: scale must lie in [0, 1]");
    for (Eigen::Index j = 0; j < zeros.size(); ++j)
      if (std::abs(zeros[j]) >= Scalar(1))
        throw std::invalid_argument("BlaschkeCover: zeros must lie in the open disk");
  }

  static BlaschkeCover monomial(Eigen::Index n) {
    return BlaschkeCover(ZeroVector::Zero(n), Scalar(0), Scalar(1));
  }

  Eigen::Index degree() const { return zeros.size(); }

  // Order of the zero at the origin.
  Eigen::Index origin_order() const {
    Eigen::Index m = 0;
    for (Eigen::Index j = 0; j < zeros.size(); ++j)
      if (std::abs(zeros[j]) <= Tol<Scalar>::zero) ++m;
    return m;
  }

  Complex operator()(Complex z) const {
    Complex acc = std::polar(scale, rotation);
    for (Eigen::Index j = 0; j < zeros.size(); ++j)
      acc *= (z - zeros[j]) / (Complex(1) - std::conj(zeros[j]) * z);
    return acc;
  }
};

using BlaschkeCoverd = BlaschkeCover<double>;

// Taylor coefficients of kappa(z^n) to order N. The coefficients of kappa
// satisfy the linear recurrence (k+1) c_{k+1} = (2-2k) c_k - (k-1) c_{k-1}
// with c_0 = 1/e, which follows from kappa'(z) (1+z)^2 = 2 kappa(z); the
// z -> z^n substitution interleaves n-1 zeros. Runs in O(N).
template <class Scalar = double>
PowerSeries<Scalar> kappa_series(Eigen::Index n, Eigen::Index order) {
  if (n < 1) throw std::invalid_argument("kappa_series: n must be >= 1");
  if (order < 0) throw std::invalid_argument("kappa_series: order must be >= 0");
  typename PowerSeries<Scalar>::CoeffVector c =
      PowerSeries<Scalar>::CoeffVector::Zero(order + 1);
  Scalar prev = 0;
  Scalar cur = std::exp(Scalar(-1));
  for (Eigen::Index k = 0; k * n <= order; ++k) {
    c[k * n] = cur;
    const Scalar next = ((Scalar(2) - Scalar(2) * Scalar(k)) * cur - Scalar(k - 1) * prev) /
                        Scalar(k + 1);
    prev = cur;
    cur = next;
  }
  return PowerSeries<Scalar>(std::move(c));
}

// Taylor coefficients of the Blaschke product, one factor at a time: each
// factor (z - a)/(1 - conj(a) z) is a polynomial times a geometric series.
template <class Scalar>
PowerSeries<Scalar> blaschke_series(const BlaschkeCover<Scalar>& cover, Eigen::Index order) {
  using Complex = std::complex<Scalar>;
  PowerSeries<Scalar> acc =
      PowerSeries<Scalar>::constant(std::polar(cover.scale, cover.rotation), order);
  for (Eigen::Index j = 0; j < cover.degree(); ++j) {
    const Complex a = cover.zeros[j];
    typename PowerSeries<Scalar>::CoeffVector g(order + 1);
    Complex p = 1;  // conj(a)^k
    for (Eigen::Index k = 0; k <= order; ++k) {
      g[k] = p;
      p *= std::conj(a);
    }
    const PowerSeries<Scalar> geom{std::move(g)};  // 1/(1 - conj(a) z)
    acc = mul(acc, mul(sub(PowerSeries<Scalar>::identity(order),
                           PowerSeries<Scalar>::constant(a, order)),
                       geom));
  }
  return acc;
}

// kappa o fhat for any series with |fhat(0)| < 1, via
// kappa(w) = exp((w-1)/(w+1)); the denominator 1 + fhat never vanishes at 0.
template <class Scalar>
PowerSeries<Scalar> kappa_compose(const PowerSeries<Scalar>& fhat) {
  using Complex = std::complex<Scalar>;
  if (std::abs(fhat.coeff(0)) >= Scalar(1))
    throw NormExceeded{};
  const PowerSeries<Scalar> num = shift(fhat, Complex(-1));
  const PowerSeries<Scalar> den = shift(fhat, Complex(1));
  return exp(div(num, den));
}

// Series of kappa o fhat for a Blaschke cover; a non-vanishing function of
// sup norm <= 1.
template <class Scalar>
PowerSeries<Scalar> compose_cover(const BlaschkeCover<Scalar>& cover, Eigen::Index order) {
  return kappa_compose(blaschke_series(cover, order));
}

namespace detail {

// Winding number of f around 0 along |z| = r, from unwrapped phase steps.
template <class Scalar>
long winding_number(const PowerSeries<Scalar>& f, Scalar r, int samples) {
  using Complex = std::complex<Scalar>;
  Scalar total = 0;
  Complex prev = eval(f, Complex(r, 0));
  for (int j = 1; j <= samples; ++j) {
    const Scalar th = Scalar(2) * Scalar(EIGEN_PI) * Scalar(j) / Scalar(samples);
    const Complex cur = eval(f, std::polar(r, th));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return std::lround(total / (Scalar(2) * Scalar(EIGEN_PI)));
}

}  // namespace detail

// The lift fhat with kappa o fhat = f, for non-vanishing |f| <= 1, computed
// as sigma^{-1}(log f) with sigma(z) = (z-1)/(z+1) and the fixed log branch.
// Zero-freeness and the sup-norm precondition are both checked on the circle
// of radius 1 - 1/(N+1): truncated inner functions overshoot |f| = 1 on the
// unit circle itself however large the order, while just inside they stay
// below 1 plus truncation slack.
template <class Scalar>
PowerSeries<Scalar> factor(const PowerSeries<Scalar>& f,
                           int boundary_samples = kBoundarySamples) {
  using Complex = std::complex<Scalar>;
  if (std::abs(f.coeff(0)) <= Tol<Scalar>::zero) throw VanishingFunction{};
  const Scalar r = Scalar(1) - Scalar(1) / Scalar(f.order() + 1);
  Scalar sup = 0;
  for (int j = 0; j < boundary_samples; ++j) {
    const Scalar th = Scalar(2) * Scalar(EIGEN_PI) * Scalar(j) / Scalar(boundary_samples);
    sup = std::max(sup, std::abs(eval(f, std::polar(r, th))));
  }
  if (sup > Scalar(1) + Tol<Scalar>::norm_slack) throw NormExceeded{};
  if (f.order() >= 1) {
    // The winding test is informative only where truncation error stays below
    // the minimum modulus; near the boundary the truncations of covering
    // compositions acquire spurious polynomial zeros, so the circle is capped.
    const Scalar rw = std::min(r, Scalar(0.75));
    if (detail::winding_number(f, rw, boundary_samples) != 0) throw VanishingFunction{};
  }
  const PowerSeries<Scalar> w = log(f);
  // sigma^{-1}(w) = (1+w)/(1-w)
  return div(shift(w, Complex(1)), shift(scale(w, Complex(-1)), Complex(1)));
}

// Splits fhat = omega o ghat with ghat(0) = 0, where omega is the Mobius
// automorphism moving 0 to fhat(0).
template <class Scalar>
std::pair<MobiusAutomorphism<Scalar>, PowerSeries<Scalar>> omega_decompose(
    const PowerSeries<Scalar>& fhat) {
  using Complex = std::complex<Scalar>;
  const Complex c0 = fhat.coeff(0);
  if (std::abs(c0) >= Scalar(1)) throw ConstantOnBoundary{};
  const MobiusAutomorphism<Scalar> omega(Scalar(0), -c0);
  // ghat = (fhat - c0)/(1 - conj(c0) fhat)
  const PowerSeries<Scalar> ghat =
      div(shift(fhat, -c0), shift(scale(fhat, -std::conj(c0)), Complex(1)));
  return {omega, ghat};
}

}  // namespace krzyz
