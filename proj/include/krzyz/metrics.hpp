#pragma once

// Hyperbolic geometry toolkit for the disk: the invariant distance, the
// Golusin refinement of Schwarz's lemma for maps with a zero of order m, the
// radial lower bound for subharmonic metrics of curvature <= -4, a
// finite-difference curvature check for radial metrics, the hyperbolic
// distance to a Mobius-shifted cover (sup over the boundary), and the
// small-t exponent fit for homotopy distances.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "krzyz/config.hpp"
#include "krzyz/covering.hpp"
#include "krzyz/series.hpp"

namespace krzyz {

struct OutsideDisk : Error {
  OutsideDisk() : Error("metrics: point lies outside the open unit disk") {}
};

struct DegenerateLeadingCoefficient : Error {
  DegenerateLeadingCoefficient() : Error("metrics: leading coefficient is zero") {}
};

struct GridTooCoarse : Error {
  GridTooCoarse() : Error("metrics: radial grid has fewer than 5 usable interior points") {}
};

// Hyperbolic distance for the density |dz|/(1-|z|^2) (curvature -4).
template <class Scalar>
Scalar hyp_distance(std::complex<Scalar> z1, std::complex<Scalar> z2) {
  if (std::abs(z1) >= Scalar(1) || std::abs(z2) >= Scalar(1)) throw OutsideDisk{};
  const std::complex<Scalar> q = (z1 - z2) / (std::complex<Scalar>(1) - std::conj(z2) * z1);
  return std::atanh(std::abs(q));
}

// Golusin's bound |f(t)| <= |t|^m (|t| + |c_m|)/(1 + |c_m||t|) for a
// self-map of the disk with a zero of order m and leading coefficient c_m.
template <class Scalar>
Scalar golusin_bound(int m, std::complex<Scalar> c_m, std::complex<Scalar> t) {
  if (m < 1) throw std::invalid_argument("golusin_bound: m must be >= 1");
  if (std::abs(c_m) <= Tol<Scalar>::zero) throw DegenerateLeadingCoefficient{};
  if (std::abs(c_m) > Scalar(1) + Tol<Scalar>::norm_slack || std::abs(t) >= Scalar(1))
    throw std::invalid_argument("golusin_bound: need |c_m| <= 1 and |t| < 1");
  const Scalar at = std::abs(t);
  const Scalar ac = std::abs(c_m);
  return std::pow(at, Scalar(m)) * (at + ac) / (Scalar(1) + ac * at);
}

// Lower bound m c r^{m-1} / (1 - c^2 r^{2m}) for radial subharmonic metrics
// of curvature <= -4 normalized by lambda(r) = m c r^{m-1} + O(r^m).
template <class Scalar>
Scalar radial_lower_bound(int m, Scalar c, Scalar r) {
  if (m < 1 || c <= Scalar(0) || c > Scalar(1) || r <= Scalar(0) || r >= Scalar(1))
    throw std::invalid_argument("radial_lower_bound: need m >= 1, c in (0,1], r in (0,1)");
  return Scalar(m) * c * std::pow(r, Scalar(m - 1)) /
         (Scalar(1) - c * c * std::pow(r, Scalar(2 * m)));
}

// A circularly symmetric metric lambda(r)|dz| sampled on a uniform radial
// grid, normalized to leading behavior m c r^{m-1} at the origin.
template <class Scalar = double>
struct RadialMetricSample {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector radii;
  Vector density;
  int order_m = 1;
  Scalar leading_c = 1;

  RadialMetricSample(Vector radii_, Vector density_, int m, Scalar c)
      : radii(std::move(radii_)), density(std::move(density_)), order_m(m), leading_c(c) {
    if (radii.size() != density.size() || radii.size() < 2)
      throw std::invalid_argument("RadialMetricSample: mismatched or empty grids");
    if (m < 1 || c <= Scalar(0) || c > Scalar(1))
      throw std::invalid_argument("RadialMetricSample: need m >= 1 and c in (0,1]");
    const Scalar h = radii[1] - radii[0];
    for (Eigen::Index i = 0; i < radii.size(); ++i) {
      if (!(radii[i] > Scalar(0) && radii[i] < Scalar(1)))
        throw std::invalid_argument("RadialMetricSample: radii must lie in (0,1)");
      if (!(density[i] > Scalar(0)) || !std::isfinite(density[i]))
        throw std::invalid_argument("RadialMetricSample: density must be positive and finite");
      if (i > 0 && std::abs(radii[i] - radii[i - 1] - h) > Scalar(1e-9) * h)
        throw std::invalid_argument("RadialMetricSample: grid must be uniform");
    }
    // leading-order normalization sanity at the innermost sample
    const Scalar lead = Scalar(m) * c * std::pow(radii[0], Scalar(m - 1));
    const Scalar ratio = density[0] / lead;
    if (ratio < Scalar(0.5) || ratio > Scalar(2))
      throw std::invalid_argument("RadialMetricSample: density does not match m c r^{m-1} near 0");
  }

  Scalar spacing() const { return radii[1] - radii[0]; }

  static RadialMetricSample tabulate(Scalar lo, Scalar hi, Eigen::Index n,
                                     const std::function<Scalar(Scalar)>& lambda, int m, Scalar c) {
    Vector r(n), d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      r[i] = lo + (hi - lo) * Scalar(i) / Scalar(n - 1);
      d[i] = lambda(r[i]);
    }
    return RadialMetricSample(std::move(r), std::move(d), m, c);
  }
};

using RadialMetricSampled = RadialMetricSample<double>;

// Pointwise curvature defect 4 lambda^2 - Laplacian(log lambda) on interior
// grid points: zero for curvature exactly -4, strictly positive where the
// curvature bound fails (e.g. any flat metric).
//
// The radial Laplacian u'' + u'/r is discretized with 6th-order central
// differences after removing the harmonic component (m-1) log r, so the
// prescribed singularity at the origin never enters the stencils. Residuals
// cover radii[3..n-4].
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> curvature_defect(const RadialMetricSample<Scalar>& s) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = s.radii.size();
  if (n < 11) throw GridTooCoarse{};
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = std::log(s.density[i]) - Scalar(s.order_m - 1) * std::log(s.radii[i]);
  const Scalar h = s.spacing();
  Vector defect(n - 6);
  for (Eigen::Index i = 3; i + 3 < n; ++i) {
    const Scalar d2 = (Scalar(2) * v[i - 3] - Scalar(27) * v[i - 2] + Scalar(270) * v[i - 1] -
                       Scalar(490) * v[i] + Scalar(270) * v[i + 1] - Scalar(27) * v[i + 2] +
                       Scalar(2) * v[i + 3]) /
                      (Scalar(180) * h * h);
    const Scalar d1 = (-v[i - 3] + Scalar(9) * v[i - 2] - Scalar(45) * v[i - 1] +
                       Scalar(45) * v[i + 1] - Scalar(9) * v[i + 2] + v[i + 3]) /
                      (Scalar(60) * h);
    const Scalar lap = d2 + d1 / s.radii[i];
    defect[i - 3] = Scalar(4) * s.density[i] * s.density[i] - lap;
  }
  return defect;
}

// Distance result that distinguishes covers whose shifted sup norm reaches
// the boundary (infinite hyperbolic distance).
template <class Scalar = double>
struct BallDistance {
  bool boundary = false;
  Scalar value = 0;
};

namespace detail {

// One golden-section pass over [lo, hi] around a bracketed maximum.
template <class Scalar, class F>
Scalar golden_max(const F& f, Scalar lo, Scalar hi, int iters = 80) {
  const Scalar inv_phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar a = lo, b = hi;
  Scalar x1 = b - inv_phi * (b - a);
  Scalar x2 = a + inv_phi * (b - a);
  Scalar f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters && (b - a) > Scalar(1e-15); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f(a), std::max(f1, std::max(f2, f(b))));
}

// Max of f over the circle parameter [0, 2pi): dense scan plus a local
// golden-section refinement around the best sample.
template <class Scalar, class F>
Scalar circle_max(const F& f, int samples) {
  Scalar best = f(Scalar(0));
  int arg = 0;
  for (int j = 1; j < samples; ++j) {
    const Scalar th = Scalar(2) * Scalar(EIGEN_PI) * Scalar(j) / Scalar(samples);
    const Scalar val = f(th);
    if (val > best) {
      best = val;
      arg = j;
    }
  }
  const Scalar step = Scalar(2) * Scalar(EIGEN_PI) / Scalar(samples);
  const Scalar refined = golden_max(f, (arg - 1) * step, (arg + 1) * step);
  return std::max(best, refined);
}

}  // namespace detail

// Hyperbolic distance from the constant c0 to the cover fhat in the unit
// ball of bounded functions: tanh^{-1} of the boundary sup of the Mobius
// shift (fhat - c0)/(1 - conj(c0) fhat). Returns the Boundary marker when
// the sup reaches 1.
template <class Scalar>
BallDistance<Scalar> ball_distance(const PowerSeries<Scalar>& fhat, std::complex<Scalar> c0,
                                   int boundary_samples = kBoundarySamples) {
  using Complex = std::complex<Scalar>;
  if (std::abs(c0) >= Scalar(1)) throw OutsideDisk{};
  // keep the sampling density at >= 8x the truncation order
  boundary_samples = std::max<int>(boundary_samples, 8 * static_cast<int>(fhat.order() + 1));
  // inverse of the omega_decompose automorphism: sends c0 to 0
  const MobiusAutomorphism<Scalar> shift_map(Scalar(0), c0);
  const auto shifted_mod = [&](Scalar th) {
    const Complex v = eval(fhat, std::polar(Scalar(1), th));
    return std::abs(shift_map(v));
  };
  Scalar supf = 0;
  for (int j = 0; j < boundary_samples; ++j) {
    const Scalar th = Scalar(2) * Scalar(EIGEN_PI) * Scalar(j) / Scalar(boundary_samples);
    supf = std::max(supf, std::abs(eval(fhat, std::polar(Scalar(1), th))));
  }
  if (supf > Scalar(1) + Tol<Scalar>::norm_slack) throw NormExceeded{};
  const Scalar sup = detail::circle_max<Scalar>(shifted_mod, boundary_samples);
  if (sup >= Scalar(1) - Tol<Scalar>::boundary) return {true, Scalar(0)};
  return {false, std::atanh(std::min(sup, Scalar(1) - Tol<Scalar>::boundary))};
}

template <class Scalar = double>
struct HomotopyFit {
  Scalar slope = 0;     // estimated order of vanishing
  Scalar constant = 0;  // estimated leading modulus
};

// Fits log delta(t) = slope * log t + log constant by least squares, where
// delta(t) is the ball distance from the homotopy cover fhat(t z) to 0. The
// cover must vanish at the origin; t must stay in (0, 0.05].
template <class Scalar>
HomotopyFit<Scalar> homotopy_exponent(const BlaschkeCover<Scalar>& cover,
                                      const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& tgrid,
                                      int boundary_samples = kBoundarySamples) {
  if (tgrid.size() < 4) throw std::invalid_argument("homotopy_exponent: need at least 4 t values");
  for (Eigen::Index i = 0; i < tgrid.size(); ++i)
    if (!(tgrid[i] > Scalar(0) && tgrid[i] <= Scalar(0.05)))
      throw std::invalid_argument("homotopy_exponent: t values must lie in (0, 0.05]");
  if (cover.origin_order() < 1)
    throw std::invalid_argument("homotopy_exponent: cover must vanish at the origin");
  const Eigen::Index order = std::max<Eigen::Index>(32, 4 * cover.degree());
  const PowerSeries<Scalar> base = blaschke_series(cover, order);
  Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (Eigen::Index i = 0; i < tgrid.size(); ++i) {
    const auto d = ball_distance(dilate(base, std::complex<Scalar>(tgrid[i])),
                                 std::complex<Scalar>(0), boundary_samples);
    if (d.boundary) throw NormExceeded{};
    const Scalar x = std::log(tgrid[i]);
    const Scalar y = std::log(d.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const Scalar npts = Scalar(tgrid.size());
  const Scalar slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
  const Scalar intercept = (sy - slope * sx) / npts;
  return {slope, std::exp(intercept)};
}

}  // namespace krzyz
