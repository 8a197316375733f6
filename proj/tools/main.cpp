// Batch verification front end. Every subcommand runs one family of checks,
// prints a JSON report (or a CSV table for coefficient dumps) and exits 0
// when all checks pass, 1 on a failed check and 2 on usage or input errors.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krzyz/covering.hpp"
#include "krzyz/extremal.hpp"
#include "krzyz/metrics.hpp"
#include "krzyz/pairing.hpp"
#include "krzyz/quadrature.hpp"
#include "krzyz/report.hpp"
#include "krzyz/series.hpp"
#include "krzyz/variation.hpp"

namespace {

using namespace krzyz;
using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoOverE = 0.73575888234288467;

struct CommonOpts {
  std::string out_path;
  std::string config_path;
  bool no_timestamp = false;
  std::uint64_t seed = 0;
  int grid_nr = 128;
  int grid_ntheta = 512;
  int starts = 200;
  int nm_max_iter = 500;
  int boundary_samples = kBoundarySamples;
  double bound_tolerance = 0;  // 0 = per-command default
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_path, "write the report to this path (.json or .csv)");
  cmd->add_option("--config", o.config_path, "JSON file overriding defaults (flags win)");
  cmd->add_flag("--no-timestamp", o.no_timestamp,
                "omit timestamp and wall-clock duration for byte-reproducible output");
  cmd->add_option("--seed", o.seed, "64-bit seed for every randomized check");
}

// config file < explicit flags
void apply_config(const CLI::App* cmd, CommonOpts& o) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + o.config_path);
  Json cfg = Json::parse(in);
  const auto take = [&](const char* key, auto& slot, const char* flag) {
    if (cfg.contains(key) && (flag == nullptr || cmd->count(flag) == 0))
      slot = cfg[key].get<std::decay_t<decltype(slot)>>();
  };
  take("seed", o.seed, "--seed");
  take("grid_nr", o.grid_nr, nullptr);
  take("grid_ntheta", o.grid_ntheta, nullptr);
  take("starts", o.starts, "--starts");
  take("nm_max_iter", o.nm_max_iter, nullptr);
  take("boundary_samples", o.boundary_samples, nullptr);
  take("bound_tolerance", o.bound_tolerance, nullptr);
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
  return buf;
}

int emit(Report& report, const CommonOpts& o, double elapsed_s) {
  report.with_timestamp = !o.no_timestamp;
  report.duration_s = elapsed_s;
  if (report.with_timestamp) report.timestamp = iso_timestamp();
  report.seed = o.seed;
  const Json j = report.to_json();
  if (!o.out_path.empty()) {
    std::ofstream out(o.out_path);
    if (!out) {
      std::cerr << "error: cannot write " << o.out_path << "\n";
      return 2;
    }
    if (o.out_path.size() >= 4 && o.out_path.substr(o.out_path.size() - 4) == ".csv") {
      out << "name,value,tolerance,pass\n";
      for (const auto& c : report.results)
        out << c.name << "," << c.value.dump() << "," << c.tolerance << "," << (c.pass ? 1 : 0)
            << "\n";
    } else {
      out << j.dump(2) << "\n";
    }
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return report.exit_code();
}

void write_coeff_csv(std::ostream& out, const PowerSeriesd& s) {
  out << "index,re,im\n";
  char buf[96];
  for (Eigen::Index k = 0; k <= s.order(); ++k) {
    std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g\n", static_cast<long long>(k),
                  s.coeff(k).real(), s.coeff(k).imag());
    out << buf;
  }
}

PowerSeriesd read_coeff_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::string line;
  std::vector<Complex> coeffs;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("index", 0) == 0) continue;
    std::istringstream row(line);
    std::string cell;
    long long idx = 0;
    double re = 0, im = 0;
    if (!std::getline(row, cell, ',')) continue;
    idx = std::stoll(cell);
    if (!std::getline(row, cell, ',')) throw std::invalid_argument("bad row: " + line);
    re = std::stod(cell);
    if (std::getline(row, cell, ',')) im = std::stod(cell);
    if (idx < 0) throw std::invalid_argument("negative index in " + path);
    if (idx > 1000000) throw std::invalid_argument("coefficient index too large in " + path);
    if (static_cast<size_t>(idx) >= coeffs.size()) coeffs.resize(idx + 1, Complex(0));
    coeffs[idx] = Complex(re, im);
  }
  if (coeffs.empty()) throw std::invalid_argument("no coefficients in " + path);
  PowerSeriesd::CoeffVector v(static_cast<Eigen::Index>(coeffs.size()));
  for (size_t i = 0; i < coeffs.size(); ++i) v[static_cast<Eigen::Index>(i)] = coeffs[i];
  return PowerSeriesd(std::move(v));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex random_disk_point(std::mt19937_64& rng, double rmax) {
  const double r = rmax * std::sqrt(uniform01(rng));
  return std::polar(r, 2.0 * kPi * uniform01(rng));
}

PowerSeriesd random_polynomial(std::mt19937_64& rng, Eigen::Index degree, double coeff_scale) {
  PowerSeriesd::CoeffVector c(degree + 1);
  for (Eigen::Index k = 0; k <= degree; ++k)
    c[k] = coeff_scale * Complex(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1);
  return PowerSeriesd(std::move(c));
}

// ---------------------------------------------------------------- commands

int cmd_kappa_coeffs(const CommonOpts& o, Eigen::Index n, Eigen::Index order, bool as_json) {
  const auto t0 = std::chrono::steady_clock::now();
  const PowerSeriesd k = kappa_series<double>(n, order);
  if (!as_json && (o.out_path.empty() ||
                   (o.out_path.size() >= 4 &&
                    o.out_path.substr(o.out_path.size() - 4) == ".csv"))) {
    if (o.out_path.empty()) {
      write_coeff_csv(std::cout, k);
      return 0;
    }
    std::ofstream out(o.out_path);
    if (!out) {
      std::cerr << "error: cannot write " << o.out_path << "\n";
      return 2;
    }
    write_coeff_csv(out, k);
    return 0;
  }
  Report report;
  report.command = "kappa-coeffs";
  report.params = {{"n", n}, {"order", order}};
  Json rows = Json::array();
  for (Eigen::Index i = 0; i <= k.order(); ++i)
    rows.push_back(Json::array({i, k.coeff(i).real(), k.coeff(i).imag()}));
  report.data = std::move(rows);
  if (n == 1 && order >= 3) {
    const double e = std::exp(1.0);
    report.add(check_close("c0", k.coeff(0).real(), 1.0 / e, 1e-12, "kappa(0) = 1/e"));
    report.add(check_close("c1", k.coeff(1).real(), 2.0 / e, 1e-12, "kappa'(0) = 2/e"));
    report.add(check_close("c2", k.coeff(2).real(), 0.0, 1e-12, "second coefficient of kappa"));
    report.add(check_close("c3", k.coeff(3).real(), -2.0 / (3.0 * e), 1e-12,
                           "third coefficient of kappa"));
  }
  double sq = 0;
  for (Eigen::Index i = 0; i <= k.order(); ++i) sq += std::norm(k.coeff(i));
  report.add(check_below("partial_parseval_sum", sq, 1.0 + 1e-9,
                         "boundary values are unimodular"));
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

int cmd_factor(const CommonOpts& o, const std::string& input, Eigen::Index order) {
  const auto t0 = std::chrono::steady_clock::now();
  PowerSeriesd f = read_coeff_csv(input);
  if (order > 0) f = f.truncated(order);
  const PowerSeriesd fhat = factor(f, o.boundary_samples);
  const PowerSeriesd roundtrip = kappa_compose(fhat);
  double err = 0;
  for (Eigen::Index k = 0; k <= f.order(); ++k)
    err = std::max(err, std::abs(roundtrip.coeff(k) - f.coeff(k)));
  Report report;
  report.command = "factor";
  report.params = {{"input", input}, {"order", f.order()}};
  Json rows = Json::array();
  for (Eigen::Index k = 0; k <= fhat.order(); ++k)
    rows.push_back(Json::array({k, fhat.coeff(k).real(), fhat.coeff(k).imag()}));
  report.data = std::move(rows);
  report.add(check_below("roundtrip_error", err, 1e-10,
                         "kappa o lift reproduces the input coefficients"));
  report.add(check_below("lift_center_modulus", std::abs(fhat.coeff(0)), 1.0,
                         "lift maps the disk into itself"));
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

int cmd_verify_bound(const CommonOpts& o, Eigen::Index n, Eigen::Index degree, double radius,
                     bool spot) {
  const auto t0 = std::chrono::steady_clock::now();
  OptimizeOptions opt;
  opt.degree = degree > 0 ? degree : n + 2;
  opt.radius = radius;
  opt.starts = o.starts;
  opt.seed = o.seed;
  opt.nm.max_iterations = o.nm_max_iter;
  const SearchResult res = optimize(FunctionalSpec::coefficient(n), opt);
  Report report;
  report.command = "verify-bound";
  report.params = {{"n", n},      {"degree", opt.degree}, {"radius", radius},
                   {"starts", opt.starts}, {"spot", spot}};
  const double target = kTwoOverE * radius;
  double lo = radius < 1.0 ? 2e-3 : (spot ? 5e-3 : 1e-3);
  if (o.bound_tolerance > 0) lo = o.bound_tolerance;
  report.add(check_in_range("best", res.best, target - lo, target + 1e-9,
                            "sharp coefficient bound 2/e on non-vanishing self-maps"));
  if (radius == 1.0 && !spot)
    report.add(check_below("argmax_deviation", extremal_deviation(res.argmax, n), 1e-3,
                           "equality only for kappa(z^n) and its rotations"));
  Json trace = Json::array();
  for (const auto& [idx, value] : res.trace) trace.push_back(Json::array({idx, value}));
  report.data = {{"trace", std::move(trace)},
                 {"argmax_scale", res.argmax.scale},
                 {"argmax_rotation", res.argmax.rotation},
                 {"argmax_degree", res.argmax.degree()},
                 {"converged", res.converged}};
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

// term syntax: COEFF:IDX^POW[*IDX^POW...], e.g. "1.0:1^2" or "0.5,-0.25:2^1*3^1"
FunctionalTerm parse_term(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("term needs COEFF:MONOMIAL");
  const std::string coeff = text.substr(0, colon);
  FunctionalTerm term;
  const auto comma = coeff.find(',');
  if (comma == std::string::npos)
    term.coefficient = std::stod(coeff);
  else
    term.coefficient = Complex(std::stod(coeff.substr(0, comma)), std::stod(coeff.substr(comma + 1)));
  std::istringstream monos(text.substr(colon + 1));
  std::string piece;
  while (std::getline(monos, piece, '*')) {
    const auto caret = piece.find('^');
    CoefficientMonomial m;
    m.index = std::stoll(caret == std::string::npos ? piece : piece.substr(0, caret));
    m.power = caret == std::string::npos ? 1 : std::stoi(piece.substr(caret + 1));
    term.monomials.push_back(m);
  }
  return term;
}

int cmd_verify_functional(const CommonOpts& o, Eigen::Index n,
                          const std::vector<std::string>& term_texts, Eigen::Index degree) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<FunctionalTerm> terms;
  for (const auto& t : term_texts) terms.push_back(parse_term(t));
  if (terms.empty()) terms.push_back(FunctionalTerm{1.0, {CoefficientMonomial{1, 2}}});
  const FunctionalSpec spec(n, terms);
  OptimizeOptions opt;
  opt.degree = degree > 0 ? degree : n + 2;
  opt.starts = o.starts;
  opt.seed = o.seed;
  opt.nm.max_iterations = o.nm_max_iter;
  const SearchResult res = optimize(spec, opt);
  Report report;
  report.command = "verify-functional";
  Json jterms = Json::array();
  for (const auto& t : term_texts) jterms.push_back(t);
  report.params = {{"n", n}, {"terms", jterms}, {"degree", opt.degree}, {"starts", opt.starts}};
  report.add(check_in_range("best", res.best, kTwoOverE - 1e-3, kTwoOverE + 1e-3,
                            "generalized functional c_n + F is claimed to share max |c_n| = 2/e"));
  report.add(check_below("argmax_deviation", extremal_deviation(res.argmax, n), 1e-3,
                         "claimed extremality of kappa(z^n) for the generalized functional"));
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

int cmd_parseval(const CommonOpts& o, Eigen::Index n, Eigen::Index terms) {
  const auto t0 = std::chrono::steady_clock::now();
  const double sum = parseval_partial(n, terms);
  const double half = parseval_partial(n, terms / 2);
  Report report;
  report.command = "parseval";
  report.params = {{"n", n}, {"terms", terms}};
  if (terms / n >= 1000000)
    report.add(check_in_range("partial_sum", sum, 0.995, 1.0 + 1e-9,
                              "squared coefficients of an inner function sum to 1"));
  else
    report.add(check_below("partial_sum", sum, 1.0 + 1e-9,
                           "squared coefficients of an inner function sum to 1"));
  report.add(check_below("monotonicity", half - sum, 0.0, "partial sums are nondecreasing"));
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

int cmd_pairing_check(const CommonOpts& o, Eigen::Index pmax) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(o.seed);
  const DiskGridd grid(o.grid_nr, o.grid_ntheta);
  Report report;
  report.command = "pairing-check";
  report.params = {{"grid_nr", o.grid_nr}, {"grid_ntheta", o.grid_ntheta}, {"pmax", pmax}};

  const double area = integrate(grid, [](Complex) { return Complex(1.0); }).real();
  report.add(check_close("disk_area", area, kPi, 1e-12, "area of the unit disk"));
  const double wint = integrate(grid, [](Complex z) {
                        const double w = 1.0 - std::norm(z);
                        return Complex(w * w);
                      }).real();
  report.add(check_close("weight_integral", wint, kPi / 3.0, 1e-12,
                         "integral of (1-|z|^2)^2 over the disk"));

  double rep_err = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const PowerSeriesd psi = random_polynomial(rng, 8, 1.0);
    for (int j = 0; j < 20; ++j) {
      const Complex zeta = random_disk_point(rng, 0.7);
      rep_err = std::max(rep_err, std::abs(reproduce(psi, zeta, grid) - eval(psi, zeta)));
    }
  }
  report.add(check_below("reproducing_error", rep_err, 1e-8,
                         "weight-4 kernel reproduces the function"));

  double cal_err = 0, alt_gap = 1e300;
  for (Eigen::Index p = 0; p <= pmax; ++p) {
    const auto cf = coeff_functional(p, PowerSeriesd::monomial(p, p + 2), grid);
    const double deriv = static_cast<double>((p + 1) * (p + 2) * (p + 3)) / (2.0 * kPi);
    const double printed = deriv * static_cast<double>(p + 4);
    cal_err = std::max(cal_err, std::abs(cf.constant - deriv));
    alt_gap = std::min(alt_gap, std::abs(cf.constant - printed));
  }
  report.add(check_below("calibrated_constant_vs_kernel_derivative", cal_err, 1e-8,
                         "coefficient functional constant (p+1)(p+2)(p+3)/(2pi)"));
  // the extra factor (p+4) sometimes quoted for this constant does not
  // reproduce monomials; the calibration rejects it by a wide margin
  report.add(Check{"extra_p_plus_4_factor_rejected", alt_gap, 1e-3,
                   "alternative normalization with an extra (p+4) factor", alt_gap > 1e-3,
                   Json()});

  double L_err = 0;
  for (Eigen::Index p = 0; p <= 6; ++p) {
    const auto mu = BeltramiFieldd::sample(grid, [&](Complex z) {
      const double w = 1.0 - std::norm(z);
      Complex zp = 1.0;
      for (Eigen::Index k = 0; k < p; ++k) zp *= z;
      return Complex(w * w) * zp;
    });
    const PowerSeriesd Lmu = apply_L(mu, 8);
    for (Eigen::Index k = 0; k <= 8; ++k)
      L_err = std::max(L_err, std::abs(Lmu.coeff(k) - (k == p ? Complex(1.0) : Complex(0.0))));
  }
  report.add(check_below("kernel_transform_monomial_density", L_err, 1e-8,
                         "L maps (1-|z|^2)^2 z^p to zeta^p"));

  double conj_err = 0;
  for (Eigen::Index p = 1; p <= 4; ++p) {
    const auto mu = BeltramiFieldd::sample(grid, [&](Complex z) {
      const double w = 1.0 - std::norm(z);
      Complex zp = 1.0;
      for (Eigen::Index k = 0; k < p; ++k) zp *= std::conj(z);
      return Complex(w * w) * zp;
    });
    conj_err = std::max(conj_err, apply_L(mu, 6).max_abs_coeff());
  }
  report.add(check_below("kernel_transform_conjugate_density", conj_err, 1e-8,
                         "conjugate-monomial densities are annihilated"));

  double dual_err = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const PowerSeriesd phi = random_polynomial(rng, 6, 1.0);
    const PowerSeriesd rho = random_polynomial(rng, 6, 1.0);
    const auto mu = BeltramiFieldd::sample(grid, [&](Complex z) { return eval(rho, z); });
    const Complex lhs = bergman_pair(phi, apply_L(mu, 16), grid);
    const Complex rhs = integrate(grid, [&](Complex z) {
      return eval(phi, z) * std::conj(eval(rho, z));
    });
    dual_err = std::max(dual_err, std::abs(lhs - rhs));
  }
  report.add(check_below("duality_identity", dual_err, 1e-8,
                         "<phi, L mu> equals the direct integral of phi conj(mu)"));

  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

int cmd_metric_check(const CommonOpts& o, Eigen::Index grid_points) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(o.seed);
  Report report;
  report.command = "metric-check";
  report.params = {{"grid_points", grid_points}};

  const auto defect_stats = [&](const RadialMetricSampled& m) {
    const auto defect = curvature_defect(m);
    double sup_l2 = 0, worst = 0;
    for (Eigen::Index i = 0; i < m.density.size(); ++i)
      sup_l2 = std::max(sup_l2, m.density[i] * m.density[i]);
    for (Eigen::Index i = 0; i < defect.size(); ++i) worst = std::max(worst, std::abs(defect[i]));
    return worst / sup_l2;
  };
  const auto lambda_hyp = [](double r) { return 1.0 / (1.0 - r * r); };
  report.add(check_below(
      "curvature_defect_hyperbolic",
      defect_stats(RadialMetricSampled::tabulate(0.1, 0.9, grid_points, lambda_hyp, 1, 1.0)), 1e-5,
      "hyperbolic density has curvature -4"));
  for (int m : {1, 2, 3, 5}) {
    const auto lambda_m = [m](double r) {
      return m * std::pow(r, m - 1) / (1.0 - std::pow(r, 2 * m));
    };
    report.add(check_below(
        "curvature_defect_pullback_m" + std::to_string(m),
        defect_stats(RadialMetricSampled::tabulate(0.1, 0.9, grid_points, lambda_m, m, 1.0)), 1e-5,
        "pullback of the hyperbolic density under z^m has curvature -4"));
  }
  {
    const auto flat = RadialMetricSampled::tabulate(0.1, 0.9, grid_points,
                                                    [](double) { return 0.5; }, 1, 0.5);
    const auto defect = curvature_defect(flat);
    double mn = 1e300;
    for (Eigen::Index i = 0; i < defect.size(); ++i) mn = std::min(mn, defect[i]);
    report.add(Check{"flat_metric_positive_defect", mn, 0.0,
                     "constant densities violate the curvature bound", mn > 0.0, Json()});
  }

  long violations = 0;
  const long cover_count = 1000;
  for (long trial = 0; trial < cover_count; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const int extra = static_cast<int>(rng() % 3);
    BlaschkeCoverd::ZeroVector zeros(m + extra);
    for (int j = 0; j < m; ++j) zeros[j] = 0.0;
    for (int j = 0; j < extra; ++j) {
      const double r = 0.1 + 0.7 * uniform01(rng);
      zeros[m + j] = std::polar(r, 2.0 * kPi * uniform01(rng));
    }
    const double rho = 0.5 + 0.5 * uniform01(rng);
    const BlaschkeCoverd cover(std::move(zeros), 2.0 * kPi * uniform01(rng), rho);
    Complex cm = std::polar(cover.scale, cover.rotation);
    for (int j = 0; j < extra; ++j) cm *= -cover.zeros[m + j];
    for (int s = 0; s < 50; ++s) {
      const Complex t = random_disk_point(rng, 0.95);
      if (std::abs(t) < 1e-3) continue;
      if (std::abs(cover(t)) > golusin_bound(m, cm, t) + 1e-12) ++violations;
    }
  }
  report.add(check_below("growth_bound_violations", static_cast<double>(violations), 0.0,
                         "order-m refinement of the Schwarz lemma"));

  report.add(check_close("radial_bound_m2", radial_lower_bound(2, 1.0, 0.5), 16.0 / 15.0, 1e-15,
                         "radial metric lower bound at m=2, c=1, r=1/2"));
  const auto bd = ball_distance(scale(PowerSeriesd::identity(8), Complex(0.5)), Complex(0));
  report.add(check_close("ball_distance_half_z", bd.value, std::atanh(0.5), 1e-9,
                         "distance to a cover with sup norm 1/2"));

  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

int cmd_distance_asymptotics(const CommonOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(o.seed);
  Report report;
  report.command = "distance-asymptotics";
  report.params = Json::object();

  Eigen::VectorXd tgrid(8);
  for (int i = 0; i < 8; ++i) tgrid[i] = 1e-3 * std::pow(20.0, i / 7.0);
  for (int m : {1, 2, 3}) {
    const auto fit = homotopy_exponent(BlaschkeCoverd::monomial(m), tgrid, o.boundary_samples);
    report.add(check_close("slope_monomial_m" + std::to_string(m), fit.slope,
                           static_cast<double>(m), 1e-3,
                           "homotopy distance vanishes to order m"));
    report.add(check_close("constant_monomial_m" + std::to_string(m), fit.constant, 1.0, 1e-3,
                           "leading coefficient of the homotopy distance"));
  }

  Eigen::VectorXd tsmall(6);
  for (int i = 0; i < 6; ++i) tsmall[i] = 1e-3 * std::pow(2.0, i / 5.0);
  double worst = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    BlaschkeCoverd::ZeroVector zeros(m + 1);
    for (int j = 0; j < m; ++j) zeros[j] = 0.0;
    zeros[m] = std::polar(0.45 + 0.2 * uniform01(rng), 2.0 * kPi * uniform01(rng));
    const BlaschkeCoverd cover(std::move(zeros), 2.0 * kPi * uniform01(rng), 1.0);
    const double cm = std::abs(cover.zeros[m]);
    const auto fit = homotopy_exponent(cover, tsmall, o.boundary_samples);
    worst = std::max(worst, std::abs(fit.constant - cm));
  }
  report.add(check_below("leading_modulus_recovery", worst, 1e-2,
                         "homotopy distance recovers the leading cover coefficient"));

  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

int cmd_schwarzian_check(const CommonOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(o.seed);
  Report report;
  report.command = "schwarzian-check";
  report.params = Json::object();

  double mob_err = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Complex a = random_disk_point(rng, 0.8);
    const double th = 2.0 * kPi * uniform01(rng);
    const MobiusAutomorphismd mo(th, a);
    const PowerSeriesd ms = apply(mo, PowerSeriesd::identity(20));
    mob_err = std::max(mob_err, schwarzian(ms).max_abs_coeff());
  }
  report.add(check_below("mobius_schwarzian", mob_err, 1e-10,
                         "Schwarzian derivative vanishes on Mobius maps"));

  const DiskGridd grid(64, 128);
  double aw_excess = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const PowerSeriesd psi = random_polynomial(rng, 5, 0.15);
    const auto transfer = transfer_exterior(psi);
    if (transfer.norm >= 2.0) continue;
    const auto mu = ahlfors_weill(psi, grid);
    aw_excess = std::max(aw_excess, mu.supnorm - 0.5 * transfer.norm);
  }
  report.add(check_below("ahlfors_weill_excess", aw_excess, 1e-10,
                         "Beltrami coefficient is bounded by half the Schwarzian norm"));

  double norm_err = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const PowerSeriesd psi = random_polynomial(rng, 8, 1.0);
    norm_err = std::max(norm_err, std::abs(transfer_exterior(psi).norm - bergman_norm(psi)));
  }
  report.add(check_below("transfer_norm_identity", norm_err, 1e-8,
                         "exterior weighted norm equals the disk weighted norm"));

  double align_err = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const PowerSeriesd phi = random_polynomial(rng, 5, 1.0);
    const double r = 0.2 + 0.5 * uniform01(rng);
    const Complex t = std::polar(1.0, 2.0 * kPi * uniform01(rng));
    const auto mu = teichmuller_mu(phi, r, t, grid);
    Complex lhs = 0;
    for (Eigen::Index i = 0; i < grid.size(); ++i)
      lhs += grid.weights[i] * mu.samples[i] * eval(phi, grid.nodes[i]);
    const double rhs =
        integrate(grid, [&](Complex z) { return Complex(std::abs(eval(phi, z))); }).real();
    align_err = std::max(align_err, std::abs(lhs - r * t * rhs));
  }
  report.add(check_below("teichmuller_alignment", align_err, 1e-8,
                         "aligned density attains the dual norm"));

  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, o, dt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for coefficient bounds of non-vanishing "
               "holomorphic self-maps of the unit disk"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* kc = app.add_subcommand("kappa-coeffs", "Taylor coefficients of kappa(z^n)");
  Eigen::Index kc_n = 1, kc_order = 8;
  bool kc_json = false;
  kc->add_option("--n", kc_n, "power substitution z -> z^n")->check(CLI::PositiveNumber);
  kc->add_option("--order", kc_order, "truncation order")->check(CLI::Range(0, 10000000));
  kc->add_flag("--json", kc_json, "emit a JSON report instead of CSV");
  add_common(kc, o);

  auto* fc = app.add_subcommand("factor", "lift a non-vanishing f through the covering map");
  std::string fc_input;
  Eigen::Index fc_order = 0;
  fc->add_option("--input", fc_input, "CSV of Taylor coefficients (index,re,im)")->required();
  fc->add_option("--order", fc_order, "truncate the input to this order first");
  add_common(fc, o);

  auto* vb = app.add_subcommand("verify-bound", "multistart maximization of |c_n|");
  Eigen::Index vb_n = 2, vb_degree = 0;
  double vb_radius = 1.0;
  bool vb_spot = false;
  vb->add_option("--n", vb_n, "coefficient index")->check(CLI::PositiveNumber);
  vb->add_option("--degree", vb_degree, "cover degree (default n+2)");
  vb->add_option("--radius", vb_radius, "cover sup-norm constraint in (0,1]");
  vb->add_option("--starts", o.starts, "multistart count");
  vb->add_flag("--spot", vb_spot, "use the looser spot-check tolerance");
  add_common(vb, o);

  auto* vf = app.add_subcommand("verify-functional",
                                "multistart maximization of |c_n + F(c_m...)|");
  Eigen::Index vf_n = 2, vf_degree = 0;
  std::vector<std::string> vf_terms;
  vf->add_option("--n", vf_n, "leading coefficient index")->check(CLI::PositiveNumber);
  vf->add_option("--term", vf_terms,
                 "term of F as COEFF:IDX^POW[*IDX^POW...]; default 1.0:1^2");
  vf->add_option("--degree", vf_degree, "cover degree (default n+2)");
  vf->add_option("--starts", o.starts, "multistart count");
  add_common(vf, o);

  auto* pv = app.add_subcommand("parseval", "partial sums of squared kappa coefficients");
  Eigen::Index pv_n = 1, pv_terms = 1000000;
  pv->add_option("--n", pv_n, "power substitution z -> z^n")->check(CLI::PositiveNumber);
  pv->add_option("--terms", pv_terms, "summation cutoff")->check(CLI::Range(0, 100000000));
  add_common(pv, o);

  auto* pc = app.add_subcommand("pairing-check", "quadrature, reproducing kernel and transform");
  Eigen::Index pc_pmax = 8;
  pc->add_option("--pmax", pc_pmax, "largest coefficient index to calibrate");
  add_common(pc, o);

  auto* mc = app.add_subcommand("metric-check", "curvature, growth bound and distance checks");
  Eigen::Index mc_points = 512;
  mc->add_option("--grid-points", mc_points, "radial grid size");
  add_common(mc, o);

  auto* da = app.add_subcommand("distance-asymptotics", "homotopy distance exponent fits");
  add_common(da, o);

  auto* sc = app.add_subcommand("schwarzian-check", "Schwarzian and Beltrami coefficient checks");
  add_common(sc, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    apply_config(cmd, o);
    if (cmd == kc) return cmd_kappa_coeffs(o, kc_n, kc_order, kc_json);
    if (cmd == fc) return cmd_factor(o, fc_input, fc_order);
    if (cmd == vb) return cmd_verify_bound(o, vb_n, vb_degree, vb_radius, vb_spot);
    if (cmd == vf) return cmd_verify_functional(o, vf_n, vf_terms, vf_degree);
    if (cmd == pv) return cmd_parseval(o, pv_n, pv_terms);
    if (cmd == pc) return cmd_pairing_check(o, pc_pmax);
    if (cmd == mc) return cmd_metric_check(o, mc_points);
    if (cmd == da) return cmd_distance_asymptotics(o);
    if (cmd == sc) return cmd_schwarzian_check(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
