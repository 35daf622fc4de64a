#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// None of these reuse the solvers under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "orlicz/young.hpp"

namespace oracle {

/// sup_x (x y - phi(x)) on a uniform grid over [0, x_max].
inline double dense_sup(const orlicz::YoungFunction& phi, double y, double x_max, int n) {
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = x_max * i / n;
    best = std::max(best, x * y - phi(x));
  }
  return best;
}

/// inf{lambda : sum w phi(a / lambda) <= T} by scanning n lambdas between a
/// doubling bracket and interpolating linearly across the crossing cell.
inline double dense_scan_gauge(const orlicz::YoungFunction& phi, std::span<const double> a,
                               std::span<const double> w, double T, int n = 100000) {
  double amax = 0.0;
  for (double v : a) amax = std::max(amax, v);
  if (amax == 0.0) return 0.0;
  auto m = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > 0.0) s += w[i] * phi(a[i] / lambda);
    return s;
  };
  double hi = amax;
  while (!(m(hi) <= T)) hi *= 2;
  double lo = hi;
  while (m(lo) <= T) lo *= 0.5;
  double prev_l = lo, prev_m = m(lo);
  for (int i = 1; i <= n; ++i) {
    const double l = lo + (hi - lo) * i / n;
    const double v = m(l);
    if (v <= T) {
      if (!std::isfinite(prev_m)) return l;
      return prev_l + (l - prev_l) * (prev_m - T) / (prev_m - v);
    }
    prev_l = l;
    prev_m = v;
  }
  return hi;
}

/// Singular values by Jacobi SVD, descending.
inline std::vector<double> jacobi_singular_values(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

}  // namespace oracle
