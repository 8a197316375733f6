#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "krzyz/metrics.hpp"
#include "test_util.hpp"

using namespace krzyz;
using testutil::uniform01;
using Complex = std::complex<double>;

TEST_SUITE("metrics") {

TEST_CASE("hyperbolic distance basics") {
  CHECK(hyp_distance(Complex(0), Complex(0)) == 0.0);
  for (double r : {0.1, 0.5, 0.9})
    CHECK(std::abs(hyp_distance(Complex(0), Complex(r)) - std::atanh(r)) < 1e-15);
  CHECK_THROWS_AS(hyp_distance(Complex(1.0), Complex(0)), OutsideDisk);
}

TEST_CASE("hyperbolic distance is Mobius invariant") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const MobiusAutomorphismd m(2.0 * M_PI * uniform01(rng), testutil::random_disk_point(rng, 0.8));
    const Complex z1 = testutil::random_disk_point(rng, 0.9);
    const Complex z2 = testutil::random_disk_point(rng, 0.9);
    CHECK(std::abs(hyp_distance(z1, z2) - hyp_distance(m(z1), m(z2))) < 1e-12);
  }
}

TEST_CASE("growth bound values") {
  CHECK(std::abs(golusin_bound(3, Complex(1.0), Complex(0.5, 0.1)) -
                 std::pow(std::abs(Complex(0.5, 0.1)), 3.0)) < 1e-15);
  CHECK(std::abs(golusin_bound(1, Complex(0.5), Complex(0.5)) - 0.4) < 1e-15);
  CHECK(golusin_bound(2, Complex(0.7), Complex(0)) == 0.0);
  CHECK_THROWS_AS(golusin_bound(1, Complex(0.0), Complex(0.5)), DegenerateLeadingCoefficient);
}

TEST_CASE("growth bound dominates random covers with an origin zero") {
  std::mt19937_64 rng(22);
  long violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const int extra = static_cast<int>(rng() % 2);
    BlaschkeCoverd::ZeroVector zeros(m + extra);
    for (int j = 0; j < m; ++j) zeros[j] = 0.0;
    for (int j = 0; j < extra; ++j)
      zeros[m + j] = std::polar(0.1 + 0.7 * uniform01(rng), 2.0 * M_PI * uniform01(rng));
    const BlaschkeCoverd cover(std::move(zeros), 2.0 * M_PI * uniform01(rng),
                               0.5 + 0.5 * uniform01(rng));
    Complex cm = std::polar(cover.scale, cover.rotation);
    for (int j = 0; j < extra; ++j) cm *= -cover.zeros[m + j];
    for (int s = 0; s < 20; ++s) {
      const Complex t = testutil::random_disk_point(rng, 0.95);
      if (std::abs(t) < 1e-3) continue;
      if (std::abs(cover(t)) > golusin_bound(m, cm, t) + 1e-12) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("growth bound monotonicity") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const Complex c = std::polar(0.05 + 0.95 * uniform01(rng), 2.0 * M_PI * uniform01(rng));
    const Complex t = testutil::random_disk_point(rng, 0.98);
    if (std::abs(t) < 1e-6) continue;
    CHECK(golusin_bound(m, c, t) <= std::pow(std::abs(t), static_cast<double>(m)) + 1e-15);
  }
  // at m = 1 with unimodular leading coefficient the bound is exactly |t|
  CHECK(std::abs(golusin_bound(1, Complex(1.0), Complex(0.3, 0.2)) -
                 std::abs(Complex(0.3, 0.2))) < 1e-15);
}

TEST_CASE("radial lower bound values") {
  for (double r : {0.2, 0.5, 0.8})
    CHECK(std::abs(radial_lower_bound(1, 1.0, r) - 1.0 / (1.0 - r * r)) < 1e-15);
  CHECK(std::abs(radial_lower_bound(2, 1.0, 0.5) - 16.0 / 15.0) < 1e-15);
  // leading order as r -> 0
  const double r0 = 1e-3;
  CHECK(std::abs(radial_lower_bound(3, 0.7, r0) / (3 * 0.7 * r0 * r0) - 1.0) < 1e-10);
}

TEST_CASE("radial lower bound is dominated by the pullback density") {
  for (int m : {1, 2, 3, 5})
    for (double c : {0.2, 0.5, 0.8, 1.0})
      for (double r : {0.1, 0.4, 0.7, 0.95}) {
        const double lam_m = m * std::pow(r, m - 1) / (1.0 - std::pow(r, 2 * m));
        CHECK(radial_lower_bound(m, c, r) <= lam_m + 1e-15);
      }
}

TEST_CASE("curvature defect vanishes for the hyperbolic density") {
  const auto sample = RadialMetricSampled::tabulate(
      0.1, 0.9, 512, [](double r) { return 1.0 / (1.0 - r * r); }, 1, 1.0);
  const auto defect = curvature_defect(sample);
  double worst = 0;
  for (Eigen::Index i = 0; i < defect.size(); ++i) {
    const double lam = sample.density[i + 3];
    worst = std::max(worst, std::abs(defect[i]) / (lam * lam));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("curvature defect vanishes for the z^3 pullback density") {
  const auto sample = RadialMetricSampled::tabulate(
      0.1, 0.9, 512, [](double r) { return 3.0 * r * r / (1.0 - std::pow(r, 6.0)); }, 3, 1.0);
  const auto defect = curvature_defect(sample);
  double worst = 0;
  for (Eigen::Index i = 0; i < defect.size(); ++i) {
    const double lam = sample.density[i + 3];
    worst = std::max(worst, std::abs(defect[i]) / (lam * lam));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("a flat density violates the curvature bound everywhere") {
  const auto sample =
      RadialMetricSampled::tabulate(0.1, 0.9, 64, [](double) { return 0.7; }, 1, 0.7);
  const auto defect = curvature_defect(sample);
  for (Eigen::Index i = 0; i < defect.size(); ++i) {
    CHECK(defect[i] > 0.0);
    CHECK(defect[i] == doctest::Approx(4.0 * 0.49).epsilon(1e-6));
  }
}

TEST_CASE("curvature defect needs a fine enough grid") {
  CHECK_THROWS_AS(curvature_defect(RadialMetricSampled::tabulate(
                      0.1, 0.9, 10, [](double r) { return 1.0 / (1.0 - r * r); }, 1, 1.0)),
                  GridTooCoarse);
}

TEST_CASE("ball distance of constants is the hyperbolic distance") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex a = testutil::random_disk_point(rng, 0.8);
    const Complex c0 = testutil::random_disk_point(rng, 0.8);
    const auto d = ball_distance(PowerSeriesd::constant(a, 4), c0);
    REQUIRE(!d.boundary);
    CHECK(std::abs(d.value - hyp_distance(a, c0)) < 1e-10);
  }
}

TEST_CASE("ball distance of z/2 is atanh(1/2)") {
  const auto d = ball_distance(scale(PowerSeriesd::identity(8), Complex(0.5)), Complex(0));
  REQUIRE(!d.boundary);
  CHECK(std::abs(d.value - std::atanh(0.5)) < 1e-9);
}

TEST_CASE("ball distance flags covers touching the boundary") {
  const auto d = ball_distance(PowerSeriesd::identity(8), Complex(0));
  CHECK(d.boundary);
}

TEST_CASE("homotopy exponent recovers the order of monomial covers") {
  Eigen::VectorXd tgrid(8);
  for (int i = 0; i < 8; ++i) tgrid[i] = 1e-3 * std::pow(20.0, i / 7.0);
  for (int m : {1, 2}) {
    const auto fit = homotopy_exponent(BlaschkeCoverd::monomial(m), tgrid);
    CHECK(std::abs(fit.slope - m) < 1e-3);
    CHECK(std::abs(fit.constant - 1.0) < 1e-3);
  }
}

TEST_CASE("homotopy exponent of the half-speed cover") {
  Eigen::VectorXd tgrid(8);
  for (int i = 0; i < 8; ++i) tgrid[i] = 1e-3 * std::pow(20.0, i / 7.0);
  const BlaschkeCoverd half(BlaschkeCoverd::ZeroVector::Zero(1), 0.0, 0.5);
  const auto fit = homotopy_exponent(half, tgrid);
  CHECK(std::abs(fit.slope - 1.0) < 1e-3);
  CHECK(std::abs(fit.constant - 0.5) < 1e-3);
}

TEST_CASE("homotopy exponent sees a double zero with a free companion") {
  Eigen::VectorXd tgrid(6);
  for (int i = 0; i < 6; ++i) tgrid[i] = 1e-3 * std::pow(2.5, i / 5.0);
  BlaschkeCoverd::ZeroVector zeros(3);
  zeros << Complex(0), Complex(0), Complex(0.5, 0.1);
  const BlaschkeCoverd cover(std::move(zeros), 0.3, 1.0);
  const auto fit = homotopy_exponent(cover, tgrid);
  CHECK(std::abs(fit.slope - 2.0) < 1e-2);
  CHECK(std::abs(fit.constant - std::abs(Complex(0.5, 0.1))) < 1e-2);
}

TEST_CASE("homotopy exponent validates its inputs") {
  Eigen::VectorXd ok(4);
  ok << 1e-3, 2e-3, 4e-3, 8e-3;
  Eigen::VectorXd big = ok;
  big[3] = 0.2;
  CHECK_THROWS_AS(homotopy_exponent(BlaschkeCoverd::monomial(1), big), std::invalid_argument);
  Eigen::VectorXd two(2);
  two << 1e-3, 2e-3;
  CHECK_THROWS_AS(homotopy_exponent(BlaschkeCoverd::monomial(1), two), std::invalid_argument);
  BlaschkeCoverd::ZeroVector off(1);
  off << Complex(0.4);
  CHECK_THROWS_AS(homotopy_exponent(BlaschkeCoverd(std::move(off), 0.0, 1.0), ok),
                  std::invalid_argument);
}

}  // TEST_SUITE
