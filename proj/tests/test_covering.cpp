#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "krzyz/covering.hpp"
#include "test_util.hpp"

using namespace krzyz;
using testutil::uniform01;
using Complex = std::complex<double>;

namespace {

// sigma(z) = (z-1)/(z+1) as a series: -1 + 2z - 2z^2 + 2z^3 - ...
PowerSeriesd sigma_series(Eigen::Index order) {
  PowerSeriesd::CoeffVector c(order + 1);
  c[0] = Complex(-1.0);
  for (Eigen::Index k = 1; k <= order; ++k) c[k] = Complex(k % 2 == 1 ? 2.0 : -2.0);
  return PowerSeriesd(std::move(c));
}

}  // namespace

TEST_SUITE("covering") {

TEST_CASE("kappa coefficients: 1/e, 2/e, 0, -2/(3e)") {
  const double e = std::exp(1.0);
  const PowerSeriesd k = kappa_series<double>(1, 3);
  CHECK(std::abs(k.coeff(0) - 1.0 / e) < 1e-12);
  CHECK(std::abs(k.coeff(1) - 2.0 / e) < 1e-12);
  CHECK(std::abs(k.coeff(2)) < 1e-12);
  CHECK(std::abs(k.coeff(3) + 2.0 / (3.0 * e)) < 1e-12);
}

TEST_CASE("kappa(z^3) interleaves two zeros between coefficients") {
  const PowerSeriesd k1 = kappa_series<double>(1, 10);
  const PowerSeriesd k3 = kappa_series<double>(3, 30);
  for (Eigen::Index j = 0; j <= 30; ++j) {
    if (j % 3 == 0)
      CHECK(std::abs(k3.coeff(j) - k1.coeff(j / 3)) == 0.0);
    else
      CHECK(std::abs(k3.coeff(j)) == 0.0);
  }
}

TEST_CASE("recurrence agrees with exp of the sigma series") {
  const Eigen::Index N = 200;
  const PowerSeriesd rec = kappa_series<double>(1, N);
  const PowerSeriesd cmp = exp(sigma_series(N));
  for (Eigen::Index k = 0; k <= N; ++k) CHECK(std::abs(rec.coeff(k) - cmp.coeff(k)) < 1e-10);
}

TEST_CASE("recurrence agrees with the composition route") {
  // kappa = (1/e) * E(sigma + 1) where E is the exponential series
  const Eigen::Index N = 50;
  PowerSeriesd::CoeffVector ec(N + 1);
  double fact = 1.0;
  for (Eigen::Index k = 0; k <= N; ++k) {
    ec[k] = Complex(1.0 / fact);
    fact *= static_cast<double>(k + 1);
  }
  const PowerSeriesd expser{std::move(ec)};
  const PowerSeriesd shifted = shift(sigma_series(N), Complex(1.0));
  const PowerSeriesd composed = scale(compose(expser, shifted), Complex(std::exp(-1.0)));
  const PowerSeriesd rec = kappa_series<double>(1, N);
  for (Eigen::Index k = 0; k <= N; ++k)
    CHECK(std::abs(rec.coeff(k) - composed.coeff(k)) < 1e-10);
}

TEST_CASE("kappa satisfies kappa'(z)(1+z)^2 = 2 kappa") {
  const PowerSeriesd k = kappa_series<double>(1, 64);
  const PowerSeriesd lhs = mul(derivative(k), PowerSeriesd{{1.0, 2.0, 1.0}}.truncated(63));
  const PowerSeriesd rhs = scale(k, Complex(2.0)).truncated(63);
  for (Eigen::Index j = 0; j <= 63; ++j) CHECK(std::abs(lhs.coeff(j) - rhs.coeff(j)) < 1e-10);
}

TEST_CASE("kappa evaluation matches the closed form") {
  const PowerSeriesd k = kappa_series<double>(1, 200);
  CHECK(std::abs(eval(k, Complex(0.0)) - 1.0 / std::exp(1.0)) < 1e-14);
  CHECK(std::abs(eval(k, Complex(0.5)) - std::exp(-1.0 / 3.0)) < 1e-12);
}

TEST_CASE("blaschke series of a single zero at the origin") {
  const PowerSeriesd s = blaschke_series(BlaschkeCoverd::monomial(1), 4);
  CHECK(std::abs(s.coeff(1) - 1.0) < 1e-15);
  CHECK(s.max_abs_coeff() == doctest::Approx(1.0));
}

TEST_CASE("blaschke series of one factor matches the geometric expansion") {
  const Complex a(0.4, -0.3);
  BlaschkeCoverd::ZeroVector zeros(1);
  zeros[0] = a;
  const PowerSeriesd s = blaschke_series(BlaschkeCoverd(std::move(zeros), 0.0, 1.0), 6);
  // (z - a) (1 + conj(a) z + conj(a)^2 z^2 + ...)
  CHECK(std::abs(s.coeff(0) + a) < 1e-15);
  Complex abar_pow = 1.0;
  for (Eigen::Index k = 1; k <= 6; ++k) {
    const Complex expect = (1.0 - std::norm(a)) * abar_pow;
    CHECK(std::abs(s.coeff(k) - expect) < 1e-14);
    abar_pow *= std::conj(a);
  }
}

TEST_CASE("repeated zeros at the origin give z^n") {
  const PowerSeriesd s = blaschke_series(BlaschkeCoverd::monomial(4), 6);
  for (Eigen::Index k = 0; k <= 6; ++k)
    CHECK(std::abs(s.coeff(k) - (k == 4 ? 1.0 : 0.0)) < 1e-15);
}

TEST_CASE("cover z^n composes to kappa(z^n)") {
  for (int n : {1, 2, 3}) {
    const PowerSeriesd f = compose_cover(BlaschkeCoverd::monomial(n), 3 * n + 2);
    const PowerSeriesd k = kappa_series<double>(n, 3 * n + 2);
    for (Eigen::Index j = 0; j <= f.order(); ++j)
      CHECK(std::abs(f.coeff(j) - k.coeff(j)) < 1e-13);
    CHECK(std::abs(f.coeff(n) - 2.0 / std::exp(1.0)) < 1e-13);
  }
}

TEST_CASE("the collapsed cover gives the constant 1/e") {
  const BlaschkeCoverd zero_cover(BlaschkeCoverd::ZeroVector(0), 0.0, 0.0);
  const PowerSeriesd f = compose_cover(zero_cover, 5);
  CHECK(std::abs(f.coeff(0) - 1.0 / std::exp(1.0)) < 1e-15);
  for (Eigen::Index k = 1; k <= 5; ++k) CHECK(std::abs(f.coeff(k)) < 1e-15);
}

TEST_CASE("cover z/2 scales the first coefficient by 1/2") {
  const BlaschkeCoverd half(BlaschkeCoverd::ZeroVector::Zero(1), 0.0, 0.5);
  const PowerSeriesd f = compose_cover(half, 3);
  CHECK(std::abs(f.coeff(1) - 1.0 / std::exp(1.0)) < 1e-14);  // 0.5 * 2/e
}

TEST_CASE("composed covers stay bounded away from zero on the disk") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const BlaschkeCoverd cover = testutil::random_cover(rng, 1 + trial % 3);
    const PowerSeriesd f = compose_cover(cover, 64);
    const double a0 = std::abs(cover(Complex(0)));
    for (int s = 0; s < 50; ++s) {
      const Complex z = testutil::random_disk_point(rng, 0.7);
      const double r = std::abs(z);
      // Schwarz-Pick: |fhat(z)| <= (r + |fhat(0)|)/(1 + |fhat(0)| r), so
      // |kappa(fhat(z))| = e^{Re sigma} stays above the horocycle floor
      const double m = (r + a0) / (1.0 + a0 * r);
      const double floor_mod = std::exp(-(1 + m) / (1 - m)) * (1.0 - 1e-6);
      CHECK(std::abs(eval(f, z)) >= floor_mod);
    }
  }
}

TEST_CASE("parseval sums of kappa are monotone and bounded by one") {
  double prev = 0;
  for (Eigen::Index N : {10, 100, 1000, 10000}) {
    const PowerSeriesd k = kappa_series<double>(1, N);
    double sum = 0;
    for (Eigen::Index j = 0; j <= N; ++j) sum += std::norm(k.coeff(j));
    CHECK(sum >= prev);
    CHECK(sum <= 1.0 + 1e-9);
    prev = sum;
  }
}

TEST_CASE("factor of kappa is the identity cover") {
  const PowerSeriesd fhat = factor(kappa_series<double>(1, 64));
  CHECK(std::abs(fhat.coeff(1) - 1.0) < 1e-10);
  CHECK(std::abs(fhat.coeff(0)) < 1e-12);
  for (Eigen::Index k = 2; k <= 10; ++k) CHECK(std::abs(fhat.coeff(k)) < 1e-10);
}

TEST_CASE("factor of the constant 1/e is the zero cover") {
  const PowerSeriesd fhat = factor(PowerSeriesd::constant(1.0 / std::exp(1.0), 8));
  CHECK(fhat.max_abs_coeff() < 1e-13);
}

TEST_CASE("factor round-trips random Blaschke covers") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const BlaschkeCoverd cover = testutil::random_cover(rng, 3, 0.6);
    const PowerSeriesd f = compose_cover(cover, 64);
    const PowerSeriesd fhat = factor(f);
    const PowerSeriesd back = kappa_compose(fhat);
    for (Eigen::Index k = 0; k <= 64; ++k)
      CHECK(std::abs(back.coeff(k) - f.coeff(k)) < 1e-10);
  }
}

TEST_CASE("factor after compose is the identity for real-centered covers") {
  BlaschkeCoverd::ZeroVector zeros(2);
  zeros << Complex(0.3), Complex(-0.5);
  const BlaschkeCoverd cover(std::move(zeros), 0.0, 0.9);
  REQUIRE(std::abs(std::imag(cover(Complex(0)))) < 1e-15);  // fhat(0) real
  const PowerSeriesd fhat = blaschke_series(cover, 48);
  const PowerSeriesd lifted = factor(kappa_compose(fhat));
  for (Eigen::Index k = 0; k <= 48; ++k)
    CHECK(std::abs(lifted.coeff(k) - fhat.coeff(k)) < 1e-10);
}

TEST_CASE("factor rejects vanishing and oversized functions") {
  CHECK_THROWS_AS(factor(PowerSeriesd::identity(8)), VanishingFunction);  // f(0) = 0
  BlaschkeCoverd::ZeroVector zeros(1);
  zeros << Complex(0.3);
  const PowerSeriesd vanishing =
      scale(blaschke_series(BlaschkeCoverd(std::move(zeros), 0.0, 1.0), 32), Complex(0.5));
  CHECK_THROWS_AS(factor(vanishing), VanishingFunction);  // zero at z = 0.3
  CHECK_THROWS_AS(factor(PowerSeriesd::constant(1.2, 8)), NormExceeded);
}

TEST_CASE("omega decomposition round-trips") {
  std::mt19937_64 rng(13);
  SUBCASE("zero center is the identity") {
    PowerSeriesd fhat = testutil::random_polynomial(rng, 4, 0.2);
    fhat = sub(fhat, PowerSeriesd::constant(fhat.coeff(0), 4));
    const auto [omega, ghat] = omega_decompose(fhat);
    CHECK(std::abs(omega.a) == 0.0);
    for (Eigen::Index k = 0; k <= 4; ++k) CHECK(std::abs(ghat.coeff(k) - fhat.coeff(k)) < 1e-14);
  }
  SUBCASE("constants map to the zero function") {
    const auto [omega, ghat] = omega_decompose(PowerSeriesd::constant(Complex(0.3, 0.4), 4));
    CHECK(ghat.max_abs_coeff() < 1e-15);
    CHECK(std::abs(omega.a + Complex(0.3, 0.4)) < 1e-15);
  }
  SUBCASE("random covers reconstruct") {
    for (int trial = 0; trial < 5; ++trial) {
      const PowerSeriesd fhat = testutil::random_polynomial(rng, 4, 0.2);
      const auto [omega, ghat] = omega_decompose(fhat);
      CHECK(std::abs(ghat.coeff(0)) < 1e-14);
      const PowerSeriesd back = apply(omega, ghat);
      for (Eigen::Index k = 0; k <= 4; ++k)
        CHECK(std::abs(back.coeff(k) - fhat.coeff(k)) < 1e-12);
    }
  }
  SUBCASE("a unimodular center is rejected") {
    CHECK_THROWS_AS(omega_decompose(PowerSeriesd::constant(1.0, 2)), ConstantOnBoundary);
  }
}

TEST_CASE("homogeneity of coefficients under dilation is exact") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const BlaschkeCoverd cover = testutil::random_cover(rng, 2);
    const PowerSeriesd f = compose_cover(cover, 4);
    const Complex t = testutil::random_disk_point(rng, 0.9);
    const PowerSeriesd ft = dilate(f, t);
    Complex tn = t * t * t * t;
    CHECK(std::abs(ft.coeff(4) - tn * f.coeff(4)) <= 1e-12);
  }
}

TEST_CASE("Mobius automorphisms require an interior point") {
  CHECK_THROWS_AS(MobiusAutomorphismd(0.0, Complex(1.0, 0.0)), ConstantOnBoundary);
  CHECK_THROWS_AS(MobiusAutomorphismd(0.3, Complex(0.8, 0.7)), ConstantOnBoundary);
}

TEST_CASE("Mobius automorphisms invert") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const MobiusAutomorphismd m(2.0 * M_PI * uniform01(rng), testutil::random_disk_point(rng, 0.8));
    const auto inv = m.inverse();
    const Complex z = testutil::random_disk_point(rng, 0.9);
    CHECK(std::abs(inv(m(z)) - z) < 1e-14);
    CHECK(std::abs(m(inv(z)) - z) < 1e-14);
  }
}

}  // TEST_SUITE
