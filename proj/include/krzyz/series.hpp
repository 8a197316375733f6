#pragma once

// Truncated complex power series on the unit disk. A PowerSeries holds the
// Taylor coefficients c_0..c_N of a holomorphic function; all arithmetic is
// exact on coefficients up to the carried truncation order. Binary operations
// truncate to the smaller operand order; composition is truncated at the
// outer order.

#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "krzyz/config.hpp"

namespace krzyz {

struct ZeroConstantTerm : Error {
  ZeroConstantTerm() : Error("series: constant term is zero") {}
};

struct NonzeroInnerConstant : Error {
  NonzeroInnerConstant() : Error("series: inner series of a composition must vanish at 0") {}
};

template <class Scalar = double>
class PowerSeries {
 public:
  using Real = Scalar;
  using Complex = std::complex<Scalar>;
  using CoeffVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  PowerSeries() : c_(CoeffVector::Zero(1)) {}

  explicit PowerSeries(CoeffVector coeffs) : c_(std::move(coeffs)) { validate(); }

  PowerSeries(std::initializer_list<Complex> coeffs)
      : c_(Eigen::Map<const CoeffVector>(coeffs.begin(), static_cast<Eigen::Index>(coeffs.size()))) {
    validate();
  }

  static PowerSeries zero(Eigen::Index order) { return PowerSeries(CoeffVector::Zero(order + 1)); }

  static PowerSeries constant(Complex c0, Eigen::Index order = 0) {
    CoeffVector c = CoeffVector::Zero(order + 1);
    c[0] = c0;
    return PowerSeries(std::move(c));
  }

  // scale * z^k, carried to the given truncation order.
  static PowerSeries monomial(Eigen::Index k, Eigen::Index order, Complex scale = Complex(1)) {
    if (order < k) order = k;
    CoeffVector c = CoeffVector::Zero(order + 1);
    c[k] = scale;
    return PowerSeries(std::move(c));
  }

  static PowerSeries identity(Eigen::Index order) { return monomial(1, order); }

  Eigen::Index order() const { return c_.size() - 1; }

  // Coefficients beyond the truncation order read as zero.
  Complex coeff(Eigen::Index k) const { return k >= 0 && k <= order() ? c_[k] : Complex(0); }

  const CoeffVector& coeffs() const { return c_; }

  // Cut or zero-pad to a new truncation order.
  PowerSeries truncated(Eigen::Index new_order) const {
    CoeffVector c = CoeffVector::Zero(new_order + 1);
    const Eigen::Index n = std::min(new_order, order());
    c.head(n + 1) = c_.head(n + 1);
    return PowerSeries(std::move(c));
  }

  Scalar max_abs_coeff() const {
    Scalar m = 0;
    for (Eigen::Index k = 0; k <= order(); ++k) m = std::max(m, std::abs(c_[k]));
    return m;
  }

 private:
  void validate() const {
    if (c_.size() == 0) throw std::invalid_argument("PowerSeries: no coefficients");
    for (Eigen::Index k = 0; k < c_.size(); ++k)
      if (!std::isfinite(c_[k].real()) || !std::isfinite(c_[k].imag()))
        throw std::invalid_argument("PowerSeries: non-finite coefficient");
  }

  CoeffVector c_;
};

using PowerSeriesd = PowerSeries<double>;

namespace detail {

// Branch of the logarithm with arg in [0, 2*pi); the plane is slit along the
// positive real axis, so log(-1) = i*pi and positive reals get a real log.
template <class Scalar>
std::complex<Scalar> log_upper_branch(std::complex<Scalar> w) {
  Scalar arg = std::arg(w);
  if (arg < Scalar(0)) arg += Scalar(2) * Scalar(EIGEN_PI);
  return {std::log(std::abs(w)), arg};
}

}  // namespace detail

template <class Scalar>
PowerSeries<Scalar> add(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b) {
  const Eigen::Index n = std::min(a.order(), b.order());
  typename PowerSeries<Scalar>::CoeffVector c = a.coeffs().head(n + 1) + b.coeffs().head(n + 1);
  return PowerSeries<Scalar>(std::move(c));
}

template <class Scalar>
PowerSeries<Scalar> sub(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b) {
  const Eigen::Index n = std::min(a.order(), b.order());
  typename PowerSeries<Scalar>::CoeffVector c = a.coeffs().head(n + 1) - b.coeffs().head(n + 1);
  return PowerSeries<Scalar>(std::move(c));
}

template <class Scalar>
PowerSeries<Scalar> scale(const PowerSeries<Scalar>& a, std::complex<Scalar> s) {
  typename PowerSeries<Scalar>::CoeffVector c = a.coeffs() * s;
  return PowerSeries<Scalar>(std::move(c));
}

template <class Scalar>
PowerSeries<Scalar> shift(const PowerSeries<Scalar>& a, std::complex<Scalar> s) {
  typename PowerSeries<Scalar>::CoeffVector c = a.coeffs();
  c[0] += s;
  return PowerSeries<Scalar>(std::move(c));
}

// Truncated Cauchy product.
template <class Scalar>
PowerSeries<Scalar> mul(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b) {
  const Eigen::Index n = std::min(a.order(), b.order());
  typename PowerSeries<Scalar>::CoeffVector c =
      PowerSeries<Scalar>::CoeffVector::Zero(n + 1);
  for (Eigen::Index i = 0; i <= std::min(n, a.order()); ++i) {
    const std::complex<Scalar> ai = a.coeff(i);
    if (ai == std::complex<Scalar>(0)) continue;
    const Eigen::Index jmax = std::min(n - i, b.order());
    for (Eigen::Index j = 0; j <= jmax; ++j) c[i + j] += ai * b.coeff(j);
  }
  return PowerSeries<Scalar>(std::move(c));
}

// Reciprocal series 1/a; requires a nonzero constant term.
template <class Scalar>
PowerSeries<Scalar> inverse(const PowerSeries<Scalar>& a) {
  if (std::abs(a.coeff(0)) <= Tol<Scalar>::zero) throw ZeroConstantTerm{};
  const Eigen::Index n = a.order();
  typename PowerSeries<Scalar>::CoeffVector c =
      PowerSeries<Scalar>::CoeffVector::Zero(n + 1);
  const std::complex<Scalar> inv0 = std::complex<Scalar>(1) / a.coeff(0);
  c[0] = inv0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    std::complex<Scalar> s = 0;
    for (Eigen::Index j = 1; j <= k; ++j) s += a.coeff(j) * c[k - j];
    c[k] = -inv0 * s;
  }
  return PowerSeries<Scalar>(std::move(c));
}

template <class Scalar>
PowerSeries<Scalar> div(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b) {
  return mul(a, inverse(b.truncated(std::min(a.order(), b.order()))));
}

// outer(inner(z)) truncated at the outer order, by Horner nesting. The inner
// series must vanish at 0; shift constants out before composing.
template <class Scalar>
PowerSeries<Scalar> compose(const PowerSeries<Scalar>& outer, const PowerSeries<Scalar>& inner) {
  if (std::abs(inner.coeff(0)) > Tol<Scalar>::zero) throw NonzeroInnerConstant{};
  const Eigen::Index n = outer.order();
  const PowerSeries<Scalar> in = inner.truncated(n);
  PowerSeries<Scalar> acc = PowerSeries<Scalar>::constant(outer.coeff(n), n);
  for (Eigen::Index k = n - 1; k >= 0; --k) acc = shift(mul(acc, in), outer.coeff(k));
  return acc;
}

// coefficient k of the result is (k+1) a_{k+1}; the order drops by one.
template <class Scalar>
PowerSeries<Scalar> derivative(const PowerSeries<Scalar>& a) {
  if (a.order() == 0) return PowerSeries<Scalar>::zero(0);
  const Eigen::Index n = a.order() - 1;
  typename PowerSeries<Scalar>::CoeffVector c(n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) c[k] = Scalar(k + 1) * a.coeff(k + 1);
  return PowerSeries<Scalar>(std::move(c));
}

// exp of a series via the derivative recurrence b' = a' b.
template <class Scalar>
PowerSeries<Scalar> exp(const PowerSeries<Scalar>& a) {
  const Eigen::Index n = a.order();
  typename PowerSeries<Scalar>::CoeffVector c(n + 1);
  c[0] = std::exp(a.coeff(0));
  for (Eigen::Index k = 1; k <= n; ++k) {
    std::complex<Scalar> s = 0;
    for (Eigen::Index j = 1; j <= k; ++j) s += Scalar(j) * a.coeff(j) * c[k - j];
    c[k] = s / Scalar(k);
  }
  return PowerSeries<Scalar>(std::move(c));
}

// log of a series. The constant term uses the fixed arg-in-[0,2pi) branch;
// the tail solves a (log a)' = a' coefficientwise, which stays stable at
// high orders where the alternating log(1+u) expansion loses every digit to
// cancellation.
template <class Scalar>
PowerSeries<Scalar> log(const PowerSeries<Scalar>& a) {
  const std::complex<Scalar> a0 = a.coeff(0);
  if (std::abs(a0) <= Tol<Scalar>::zero) throw ZeroConstantTerm{};
  const Eigen::Index n = a.order();
  typename PowerSeries<Scalar>::CoeffVector b(n + 1);
  b[0] = detail::log_upper_branch(a0);
  for (Eigen::Index k = 1; k <= n; ++k) {
    std::complex<Scalar> s = Scalar(k) * a.coeff(k);
    for (Eigen::Index j = 1; j < k; ++j) s -= Scalar(j) * b[j] * a.coeff(k - j);
    b[k] = s / (Scalar(k) * a0);
  }
  return PowerSeries<Scalar>(std::move(b));
}

// Horner evaluation of the truncated polynomial.
template <class Scalar>
std::complex<Scalar> eval(const PowerSeries<Scalar>& a, std::complex<Scalar> z) {
  std::complex<Scalar> acc = a.coeff(a.order());
  for (Eigen::Index k = a.order() - 1; k >= 0; --k) acc = acc * z + a.coeff(k);
  return acc;
}

// f(tz): coefficient k picks up a factor t^k.
template <class Scalar>
PowerSeries<Scalar> dilate(const PowerSeries<Scalar>& a, std::complex<Scalar> t) {
  typename PowerSeries<Scalar>::CoeffVector c(a.order() + 1);
  std::complex<Scalar> tk = 1;
  for (Eigen::Index k = 0; k <= a.order(); ++k) {
    c[k] = a.coeff(k) * tk;
    tk *= t;
  }
  return PowerSeries<Scalar>(std::move(c));
}

template <class Scalar>
PowerSeries<Scalar> operator+(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b) {
  return add(a, b);
}
template <class Scalar>
PowerSeries<Scalar> operator-(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b) {
  return sub(a, b);
}
template <class Scalar>
PowerSeries<Scalar> operator*(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b) {
  return mul(a, b);
}
template <class Scalar>
PowerSeries<Scalar> operator*(std::complex<Scalar> s, const PowerSeries<Scalar>& a) {
  return scale(a, s);
}
template <class Scalar>
PowerSeries<Scalar> operator*(Scalar s, const PowerSeries<Scalar>& a) {
  return scale(a, std::complex<Scalar>(s));
}

}  // namespace krzyz
