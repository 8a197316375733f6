#pragma once

// The optimization bench: coefficient functionals J(f) = c_n + F(c_m1, ...)
// evaluated on kappa o fhat over parametrized Blaschke-cover families, a
// seeded multistart simplex search for their maxima, Parseval partial sums
// for kappa(z^n), and the exact homogeneity check under f(z) -> f(tz).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "krzyz/config.hpp"
#include "krzyz/covering.hpp"
#include "krzyz/nelder_mead.hpp"
#include "krzyz/series.hpp"

namespace krzyz {

struct CoefficientMonomial {
  Eigen::Index index = 1;  // which Taylor coefficient c_m
  int power = 1;
};

struct FunctionalTerm {
  std::complex<double> coefficient;
  std::vector<CoefficientMonomial> monomials;
};

// J(f) = c_n + F(c_{m_1}, ..., c_{m_s}) with F a polynomial whose monomials
// all have total degree >= 2, so F and its differential vanish at 0.
struct FunctionalSpec {
  Eigen::Index n = 1;
  std::vector<FunctionalTerm> terms;

  FunctionalSpec(Eigen::Index n_, std::vector<FunctionalTerm> terms_ = {})
      : n(n_), terms(std::move(terms_)) {
    if (n < 1) throw std::invalid_argument("FunctionalSpec: n must be >= 1");
    for (const auto& term : terms) {
      int total = 0;
      if (term.monomials.empty())
        throw std::invalid_argument("FunctionalSpec: constant terms are not allowed in F");
      for (const auto& m : term.monomials) {
        if (m.index < 1 || m.power < 1)
          throw std::invalid_argument("FunctionalSpec: monomial indices and powers must be >= 1");
        total += m.power;
      }
      if (total < 2)
        throw std::invalid_argument("FunctionalSpec: F must vanish to second order at 0");
    }
  }

  static FunctionalSpec coefficient(Eigen::Index n_) { return FunctionalSpec(n_); }

  Eigen::Index max_index() const {
    Eigen::Index m = n;
    for (const auto& term : terms)
      for (const auto& mono : term.monomials) m = std::max(m, mono.index);
    return m;
  }

  std::complex<double> evaluate(const PowerSeriesd& f) const {
    std::complex<double> value = f.coeff(n);
    for (const auto& term : terms) {
      std::complex<double> prod = term.coefficient;
      for (const auto& mono : term.monomials)
        for (int p = 0; p < mono.power; ++p) prod *= f.coeff(mono.index);
      value += prod;
    }
    return value;
  }
};

// |J(kappa o cover)| at a truncation order resolving every index in J.
inline double objective(const FunctionalSpec& spec, const BlaschkeCoverd& cover) {
  return std::abs(spec.evaluate(compose_cover(cover, spec.max_index())));
}

namespace detail {

// Radial squash of the plane onto the open disk; optimizers work in the
// unconstrained plane coordinates.
inline std::complex<double> squash_to_disk(double x, double y) {
  constexpr double cap = 1.0 - 1e-12;
  const double r = std::hypot(x, y);
  if (r < 1e-8) return {x * (1.0 - r * r / 3.0), y * (1.0 - r * r / 3.0)};
  const double mag = std::min(std::tanh(r), cap);
  return std::polar(mag, std::atan2(y, x));
}

inline std::pair<double, double> unsquash_from_disk(std::complex<double> a) {
  const double r = std::abs(a);
  if (r < 1e-12) return {0.0, 0.0};
  const double u = std::atanh(std::min(r, std::nextafter(1.0, 0.0)));
  return {a.real() * u / r, a.imag() * u / r};
}

inline double logistic(double s) { return 1.0 / (1.0 + std::exp(-s)); }

inline double logit(double p) {
  if (p >= 1.0 - 1e-12) return 40.0;
  if (p <= 1e-12) return -40.0;
  return std::log(p / (1.0 - p));
}

// Parameter layout: [re(u_1), im(u_1), ..., re(u_d), im(u_d), theta, s_rho];
// zeros are squashed plane points, rho = radius * logistic(s_rho).
inline BlaschkeCoverd decode_cover(const Eigen::VectorXd& x, Eigen::Index degree, double radius) {
  BlaschkeCoverd::ZeroVector zeros(degree);
  for (Eigen::Index j = 0; j < degree; ++j)
    zeros[j] = squash_to_disk(x[2 * j], x[2 * j + 1]);
  const double theta = x[2 * degree];
  const double rho = radius * logistic(x[2 * degree + 1]);
  return BlaschkeCoverd(std::move(zeros), theta, std::min(rho, 1.0));
}

inline Eigen::VectorXd encode_cover(const BlaschkeCoverd& cover, double radius) {
  Eigen::VectorXd x(2 * cover.degree() + 2);
  for (Eigen::Index j = 0; j < cover.degree(); ++j) {
    const auto [ux, uy] = unsquash_from_disk(cover.zeros[j]);
    x[2 * j] = ux;
    x[2 * j + 1] = uy;
  }
  x[2 * cover.degree()] = cover.rotation;
  x[2 * cover.degree() + 1] = logit(cover.scale / radius);
  return x;
}

inline double wrap_angle(double th) {
  const double two_pi = 2.0 * EIGEN_PI;
  th = std::fmod(th, two_pi);
  if (th < 0) th += two_pi;
  return th;
}

// Canonical ordering for tie-breaking: scale, rotation, zeros sorted by
// (re, im), flattened.
inline std::vector<double> canonical_vector(const BlaschkeCoverd& cover) {
  std::vector<std::complex<double>> zs(cover.zeros.data(), cover.zeros.data() + cover.degree());
  std::sort(zs.begin(), zs.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<double> v;
  v.push_back(cover.scale);
  v.push_back(wrap_angle(cover.rotation));
  for (auto z : zs) {
    v.push_back(z.real());
    v.push_back(z.imag());
  }
  return v;
}

// Folds zeros that converged to the boundary into the rotation and scale;
// a factor (z-a)/(1-conj(a)z) degenerates to the constant -a as |a| -> 1.
inline BlaschkeCoverd fold_boundary_zeros(const BlaschkeCoverd& cover, double threshold) {
  std::vector<std::complex<double>> kept;
  double rotation = cover.rotation;
  double scale = cover.scale;
  for (Eigen::Index j = 0; j < cover.degree(); ++j) {
    const std::complex<double> a = cover.zeros[j];
    if (std::abs(a) >= threshold) {
      scale *= std::abs(a);
      rotation += std::arg(-a);
    } else {
      kept.push_back(a);
    }
  }
  BlaschkeCoverd::ZeroVector zeros(static_cast<Eigen::Index>(kept.size()));
  for (size_t j = 0; j < kept.size(); ++j) zeros[static_cast<Eigen::Index>(j)] = kept[j];
  return BlaschkeCoverd(std::move(zeros), wrap_angle(rotation), std::min(scale, 1.0));
}

// Rotates the cover to fhat(e^{i beta} z).
inline BlaschkeCoverd rotate_cover(const BlaschkeCoverd& cover, double beta) {
  BlaschkeCoverd::ZeroVector zeros(cover.degree());
  const std::complex<double> e = std::polar(1.0, -beta);
  for (Eigen::Index j = 0; j < cover.degree(); ++j) zeros[j] = cover.zeros[j] * e;
  return BlaschkeCoverd(std::move(zeros),
                        wrap_angle(cover.rotation + static_cast<double>(cover.degree()) * beta),
                        cover.scale);
}

// Portable uniform double in [0, 1) from the top 53 bits of the generator.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct OptimizeOptions {
  Eigen::Index degree = 3;
  double radius = 1.0;
  int starts = 200;
  std::uint64_t seed = 0;
  NelderMeadOptions nm{};
  double fold_threshold = 0.99;
};

struct SearchResult {
  double best = 0;
  BlaschkeCoverd argmax;
  Eigen::VectorXd argmax_params;
  std::vector<std::pair<int, double>> trace;  // (start index, converged value)
  std::uint64_t seed = 0;
  bool converged = true;  // false when every start hit the iteration cap
};

// Multistart simplex maximization of |J| over degree-d covers with
// scale <= radius. The returned argmax is folded (boundary zeros absorbed
// into the rotation), polished, and phase-normalized so that c_n of the
// maximizer is real and nonnegative; exact ties pick the lexicographically
// smallest parameter vector. Deterministic for a fixed seed.
inline SearchResult optimize(const FunctionalSpec& spec, const OptimizeOptions& opt) {
  if (opt.degree < 1) throw std::invalid_argument("optimize: degree must be >= 1");
  if (opt.starts < 1) throw std::invalid_argument("optimize: starts must be >= 1");
  if (!(opt.radius > 0.0 && opt.radius <= 1.0))
    throw std::invalid_argument("optimize: radius must lie in (0, 1]");

  // Covers with fhat(0) numerically at -1 overflow the exponential lift;
  // they sit at the collapsed end of the family where the objective tends to
  // zero anyway, so exploration treats them as worthless.
  const auto guarded = [&](const BlaschkeCoverd& cover) {
    try {
      return objective(spec, cover);
    } catch (const std::exception&) {
      return 0.0;
    }
  };
  const auto objective_at = [&](const Eigen::VectorXd& x) {
    return guarded(detail::decode_cover(x, opt.degree, opt.radius));
  };

  std::mt19937_64 rng(opt.seed);
  std::vector<Eigen::VectorXd> starts;
  starts.reserve(opt.starts);
  for (int s = 0; s < opt.starts; ++s) {
    Eigen::VectorXd x(2 * opt.degree + 2);
    for (Eigen::Index j = 0; j < opt.degree; ++j) {
      const double r = 0.95 * std::sqrt(detail::uniform01(rng));
      const double phi = 2.0 * EIGEN_PI * detail::uniform01(rng);
      const auto [ux, uy] = detail::unsquash_from_disk(std::polar(r, phi));
      x[2 * j] = ux;
      x[2 * j + 1] = uy;
    }
    x[2 * opt.degree] = 2.0 * EIGEN_PI * detail::uniform01(rng);
    x[2 * opt.degree + 1] = detail::logit(0.5 + 0.5 * detail::uniform01(rng));
    starts.push_back(std::move(x));
  }

  SearchResult result;
  result.seed = opt.seed;
  std::vector<std::pair<Eigen::VectorXd, double>> converged;
  bool any_converged = false;
  double vmax = -1.0;
  for (int s = 0; s < opt.starts; ++s) {
    const NelderMeadResult nm = nelder_mead_maximize(objective_at, starts[s], opt.nm);
    any_converged = any_converged || nm.converged;
    result.trace.emplace_back(s, nm.value);
    converged.emplace_back(nm.x, nm.value);
    vmax = std::max(vmax, nm.value);
  }

  // fold + polish + normalize the near-ties, then break ties deterministically
  NelderMeadOptions polish = opt.nm;
  polish.initial_step = 0.05;
  polish.max_iterations = std::max(opt.nm.max_iterations, 4000);
  polish.stagnation_spread = 1e-11;
  polish.restart_shrink = 0.1;
  double best_value = -1.0;
  BlaschkeCoverd best_cover;
  std::vector<double> best_key;
  for (const auto& [x, value] : converged) {
    if (value < vmax - 1e-9) continue;
    const auto polish_family = [&](const BlaschkeCoverd& c0) {
      const Eigen::Index d = c0.degree();
      const auto obj = [&](const Eigen::VectorXd& y) {
        return guarded(detail::decode_cover(y, d, opt.radius));
      };
      const NelderMeadResult r = nelder_mead_maximize(obj, detail::encode_cover(c0, opt.radius), polish);
      any_converged = any_converged || r.converged;
      return detail::decode_cover(r.x, d, opt.radius);
    };
    BlaschkeCoverd candidate = detail::decode_cover(x, opt.degree, opt.radius);
    double cand_value = guarded(candidate);
    for (int round = 0; round < 2; ++round) {
      const BlaschkeCoverd folded = detail::fold_boundary_zeros(candidate, opt.fold_threshold);
      BlaschkeCoverd refined = polish_family(folded);
      double refined_value = guarded(refined);
      if (folded.degree() != candidate.degree() && refined_value < cand_value - 1e-12) {
        // folding lost value; keep polishing the unfolded family
        refined = polish_family(candidate);
        refined_value = guarded(refined);
      }
      candidate = refined;
      cand_value = refined_value;
    }
    // phase normalization: make c_n of the maximizer real nonnegative
    const std::complex<double> cn =
        compose_cover(candidate, spec.n).coeff(spec.n);
    if (std::abs(cn) > 1e-13) {
      const double beta0 = -std::arg(cn) / static_cast<double>(spec.n);
      BlaschkeCoverd best_rot = detail::rotate_cover(candidate, beta0);
      std::vector<double> best_rot_key = detail::canonical_vector(best_rot);
      for (Eigen::Index k = 1; k < spec.n; ++k) {
        const double beta = beta0 + 2.0 * EIGEN_PI * static_cast<double>(k) / static_cast<double>(spec.n);
        BlaschkeCoverd rot = detail::rotate_cover(candidate, beta);
        std::vector<double> key = detail::canonical_vector(rot);
        if (key < best_rot_key) {
          best_rot = rot;
          best_rot_key = key;
        }
      }
      candidate = best_rot;
      cand_value = objective(spec, candidate);
    }
    std::vector<double> key = detail::canonical_vector(candidate);
    if (cand_value > best_value + 1e-12 ||
        (cand_value > best_value - 1e-12 && (best_key.empty() || key < best_key))) {
      best_value = cand_value;
      best_cover = candidate;
      best_key = std::move(key);
    }
  }

  result.converged = any_converged;
  result.best = best_value;
  result.argmax = best_cover;
  result.argmax_params = detail::encode_cover(best_cover, opt.radius);
  return result;
}

// Constrained search over covers with fhat(0) = a fixed: the family is
// fhat = (h + a)/(1 + conj(a) h) with h ranging over covers vanishing at the
// origin. Reproduces the interior Schwarz bound for |c_1|.
inline SearchResult optimize_fixed_origin(const FunctionalSpec& spec, std::complex<double> a,
                                          Eigen::Index degree, int starts, std::uint64_t seed,
                                          const NelderMeadOptions& nm_opt = {}) {
  if (std::abs(a) >= 1.0)
    throw std::invalid_argument("optimize_fixed_origin: a must lie in the open disk");
  if (degree < 1) throw std::invalid_argument("optimize_fixed_origin: degree must be >= 1");
  const Eigen::Index free_zeros = degree - 1;
  const Eigen::Index order = spec.max_index();

  const auto decode_h = [&](const Eigen::VectorXd& x) {
    BlaschkeCoverd::ZeroVector zeros(free_zeros + 1);
    zeros[0] = 0.0;
    for (Eigen::Index j = 0; j < free_zeros; ++j)
      zeros[j + 1] = detail::squash_to_disk(x[2 * j], x[2 * j + 1]);
    const double theta = x[2 * free_zeros];
    const double rho = detail::logistic(x[2 * free_zeros + 1]);
    return BlaschkeCoverd(std::move(zeros), theta, std::min(rho, 1.0));
  };
  const auto objective_at = [&](const Eigen::VectorXd& x) {
    try {
      const PowerSeriesd h = blaschke_series(decode_h(x), order);
      const PowerSeriesd fhat =
          div(shift(h, a), shift(scale(h, std::conj(a)), std::complex<double>(1)));
      return std::abs(spec.evaluate(kappa_compose(fhat)));
    } catch (const std::exception&) {
      return 0.0;
    }
  };

  std::mt19937_64 rng(seed);
  SearchResult result;
  result.seed = seed;
  double best = -1.0;
  Eigen::VectorXd best_x;
  bool any_converged = false;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd x(2 * free_zeros + 2);
    for (Eigen::Index j = 0; j < free_zeros; ++j) {
      const double r = 0.95 * std::sqrt(detail::uniform01(rng));
      const double phi = 2.0 * EIGEN_PI * detail::uniform01(rng);
      const auto [ux, uy] = detail::unsquash_from_disk(std::polar(r, phi));
      x[2 * j] = ux;
      x[2 * j + 1] = uy;
    }
    x[2 * free_zeros] = 2.0 * EIGEN_PI * detail::uniform01(rng);
    x[2 * free_zeros + 1] = detail::logit(0.5 + 0.5 * detail::uniform01(rng));
    const NelderMeadResult nm = nelder_mead_maximize(objective_at, x, nm_opt);
    any_converged = any_converged || nm.converged;
    result.trace.emplace_back(s, nm.value);
    if (nm.value > best) {
      best = nm.value;
      best_x = nm.x;
    }
  }
  result.converged = any_converged;
  result.best = best;
  result.argmax = decode_h(best_x);
  result.argmax_params = best_x;
  return result;
}

// Partial Parseval sum over k <= terms of |c_k(kappa(z^n))|^2. Only indexes
// divisible by n contribute, so the sum streams the kappa recurrence up to
// terms/n; monotone nondecreasing in the cutoff.
inline double parseval_partial(Eigen::Index n, Eigen::Index terms) {
  if (n < 1 || terms < 0) throw std::invalid_argument("parseval_partial: need n >= 1, terms >= 0");
  const Eigen::Index kmax = terms / n;
  long double sum = 0.0L;
  double prev = 0.0;
  double cur = std::exp(-1.0);
  for (Eigen::Index k = 0; k <= kmax; ++k) {
    sum += static_cast<long double>(cur) * cur;
    const double next = ((2.0 - 2.0 * k) * cur - (k - 1.0) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return static_cast<double>(sum);
}

// |c_n(f_t) - t^n c_n(f)| for f = kappa o cover and f_t(z) = f(tz); an exact
// algebraic identity, so the residual is pure roundoff.
inline double homogeneity_residual(Eigen::Index n, const BlaschkeCoverd& cover,
                                   std::complex<double> t) {
  const PowerSeriesd f = compose_cover(cover, n);
  const PowerSeriesd ft = dilate(f, t);
  std::complex<double> tn = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) tn *= t;
  return std::abs(ft.coeff(n) - tn * f.coeff(n));
}

// Coefficient distance from kappa o cover to the extremal kappa(z^n), after
// quotienting the full rotation symmetry f -> e1 f(e2 z). The maximizing set
// of |c_n| is a whole orbit of covers (the e1 factor acts through deck
// transformations that move fhat(0) along horocycles), so the honest argmax
// metric normalizes both phases of the composed function and compares
// against kappa(z^n) coefficientwise.
inline double extremal_deviation(const BlaschkeCoverd& cover, Eigen::Index n) {
  const Eigen::Index order = n + 2;
  const PowerSeriesd f = compose_cover(cover, order);
  const PowerSeriesd target = kappa_series<double>(n, order);
  const std::complex<double> c0 = f.coeff(0);
  if (std::abs(c0) < 1e-300) return std::abs(target.max_abs_coeff());
  const std::complex<double> e1 = std::conj(c0) / std::abs(c0);
  std::complex<double> cn = e1 * f.coeff(n);
  std::complex<double> e2 = 1.0;
  if (std::abs(cn) > 1e-13 && n > 0)
    e2 = std::polar(1.0, -std::arg(cn) / static_cast<double>(n));
  double worst = 0;
  std::complex<double> e2k = 1.0;
  for (Eigen::Index k = 0; k <= order; ++k) {
    worst = std::max(worst, std::abs(e1 * e2k * f.coeff(k) - target.coeff(k)));
    e2k *= e2;
  }
  return worst;
}

}  // namespace krzyz
