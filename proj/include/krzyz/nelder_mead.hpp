#pragma once

// Derivative-free simplex maximization (Nelder & Mead 1965, with the
// parameter choices of Lagarias et al. 1998) plus a shrink-restart on
// stagnation. Deterministic: no internal randomness, fixed tie-breaking.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace krzyz {

struct NelderMeadOptions {
  int max_iterations = 500;
  double initial_step = 0.5;
  // Convergence is judged on the spread of simplex values alone: coefficient
  // objectives are exactly rotation-invariant, so the simplex never contracts
  // along the flat phase direction.
  double value_tolerance = 1e-12;
  int stagnation_window = 60;  // iterations without improvement before a restart
  double restart_shrink = 0.3;
  // Spread below which a stagnant simplex counts as converged rather than
  // getting a restart; tightened by polishing passes.
  double stagnation_spread = 1e-6;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0;
  int iterations = 0;
  bool converged = false;
};

// Maximizes f over R^n starting from x0.
inline NelderMeadResult nelder_mead_maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                                             const Eigen::VectorXd& x0,
                                             const NelderMeadOptions& opt = {}) {
  const int n = static_cast<int>(x0.size());
  const double rho = 1.0, chi = 2.0, gamma = 0.5, sigma = 0.5;

  std::vector<Eigen::VectorXd> verts;
  std::vector<double> vals;
  // center taken by value: restarts pass a vertex of the simplex being rebuilt
  const auto build_simplex = [&](const Eigen::VectorXd center, double step) {
    verts.assign(1, center);
    vals.assign(1, f(center));
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v = center;
      v[i] += step;
      verts.push_back(v);
      vals.push_back(f(v));
    }
  };
  build_simplex(x0, opt.initial_step);

  std::vector<int> idx(n + 1);
  NelderMeadResult out;
  double best_seen = *std::max_element(vals.begin(), vals.end());
  int last_improvement = 0;

  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] > vals[b]; });

    const double spread = vals[idx[0]] - vals[idx[n]];
    if (spread < opt.value_tolerance * (1.0 + std::abs(vals[idx[0]]))) {
      out.converged = true;
      break;
    }

    if (vals[idx[0]] > best_seen + 1e-15) {
      best_seen = vals[idx[0]];
      last_improvement = it;
    } else if (it - last_improvement >= opt.stagnation_window) {
      // A small simplex that stopped improving has refined the local maximum
      // as far as it can; a large one is stuck and gets a shrunken restart.
      if (spread < opt.stagnation_spread * (1.0 + std::abs(vals[idx[0]]))) {
        out.converged = true;
        break;
      }
      build_simplex(verts[idx[0]], opt.initial_step * opt.restart_shrink);
      last_improvement = it;
      continue;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += verts[idx[i]];
    centroid /= n;

    const int worst = idx[n];
    const Eigen::VectorXd refl = centroid + rho * (centroid - verts[worst]);
    const double frefl = f(refl);

    if (frefl > vals[idx[0]]) {
      const Eigen::VectorXd expd = centroid + rho * chi * (centroid - verts[worst]);
      const double fexpd = f(expd);
      if (fexpd > frefl) {
        verts[worst] = expd;
        vals[worst] = fexpd;
      } else {
        verts[worst] = refl;
        vals[worst] = frefl;
      }
    } else if (frefl > vals[idx[n - 1]]) {
      verts[worst] = refl;
      vals[worst] = frefl;
    } else {
      const bool outside = frefl > vals[worst];
      Eigen::VectorXd contr;
      if (outside)
        contr = centroid + gamma * rho * (centroid - verts[worst]);
      else
        contr = centroid - gamma * (centroid - verts[worst]);
      const double fcontr = f(contr);
      if (fcontr > (outside ? frefl : vals[worst])) {
        verts[worst] = contr;
        vals[worst] = fcontr;
      } else {
        for (int i = 1; i <= n; ++i) {
          verts[idx[i]] = verts[idx[0]] + sigma * (verts[idx[i]] - verts[idx[0]]);
          vals[idx[i]] = f(verts[idx[i]]);
        }
      }
    }
  }

  const auto best = std::max_element(vals.begin(), vals.end());
  out.x = verts[static_cast<size_t>(best - vals.begin())];
  out.value = *best;
  out.iterations = it;
  return out;
}

}  // namespace krzyz
