#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace orlicz {

/// Stopping rule shared by the scalar solvers: the bracket is accepted once
/// its width is below max(abs_tol, rel_tol * |endpoint|).
struct RootOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_iter = 400;
};

/// A sign-change bracket left behind by `find_root`. `lo` and `hi` are ordered
/// (lo < hi); `f_lo` and `f_hi` carry opposite signs (or one is zero).
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  int iterations = 0;
};

/// Shrinks a sign-change bracket of a monotone scalar function.
///
/// Endpoints where `f` is not finite (the extended-real +inf of divergent
/// modulars) are bisected away first; once both ends are finite the bracket is
/// reduced with TOMS 748, which never leaves the bracket. Throws NoRoot if the
/// initial endpoints do not straddle a sign change.
Bracket find_root(const std::function<double(double)>& f, double lo, double hi,
                  const RootOptions& opts = {});

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal function on [a, b].
/// Stops when the bracket is narrower than `tol * max(1, |x|)`.
GoldenResult golden_section_max(const std::function<double(double)>& f, double a,
                                double b, double tol = 1e-8, int max_iter = 200);

struct GaussLegendre {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (exact for polynomials of degree 2n-1).
GaussLegendre gauss_legendre(int n);

std::vector<double> log_grid(double a, double b, int n);
std::vector<double> linspace(double a, double b, int n);

/// Decorrelated per-sample seed derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace orlicz
