#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orlicz/numerics.hpp"

namespace orlicz {

/// A convex gauge Phi: [0, inf) -> [0, +inf] with Phi(0) = 0 and Phi -> inf.
///
/// Values are extended reals: +inf is a legal result of `eval` and `deriv`
/// (exp-type gauges overflow, and gauges with a finite `domain_hint` are +inf
/// past it). `deriv` is the right derivative. Instances are immutable; the
/// callables only capture shared const state, so copies are cheap and safe to
/// use from several threads.
struct YoungFunction {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
  std::optional<double> domain_hint;
  // Points where `deriv` may jump, ascending. Lets the conjugate land on a
  // kink exactly instead of creeping up to it.
  std::vector<double> kinks;
  std::string label;
  // Constants of a fitted bound deriv(t) <= growth_c0 * t^growth_p.
  std::optional<double> growth_c0;
  std::optional<double> growth_p;

  double operator()(double x) const { return eval(x); }
};

/// (phi, psi) linked by convex conjugation. `scale` is the s of phi(x) = base(s x)
/// when the pair came out of `normalize_pair`.
struct ComplementaryPair {
  YoungFunction phi;
  YoungFunction psi;
  bool normalized = false;
  double scale = 1.0;
};

/// Two-sided domination witness for phi1 < phi2:
///   phi1(a x) <= b phi2(x) for x >= x0   and   phi2(c x) <= d phi1(x) for 0 < x <= x1.
struct OrderingWitness {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double d = 1.0;
  double x0 = 1.0;
  double x1 = 1.0;
};

struct Delta2Witness {
  double C = 0.0;
  double x0 = 0.0;
};

struct ConjugateOptions {
  double x_cap = 1e12;  // maximizer bracket bound
  RootOptions root{0.0, 1e-15, 400};
  bool check_convexity = true;
};

/// Numerical convex conjugate Psi(y) = sup_x (x y - Phi(x)).
///
/// Each query solves deriv(x) = y by bracketed root finding when `deriv` is
/// available and finite; otherwise the concave objective is maximized by
/// golden-section search on a doubling bracket. The returned function's
/// `deriv` is the maximizer, i.e. (Phi')^{-1}(y).
/// Throws NonConvexInput if convexity sampling of `phi` fails; queries throw
/// BracketOverflow when the maximizer runs past `x_cap`.
YoungFunction conjugate(const YoungFunction& phi, const ConjugateOptions& opts = {});

/// phi(s x); its conjugate is psi(y / s).
YoungFunction scaled(const YoungFunction& phi, double s);

/// Rescales phi so that the pair satisfies Phi(1) + Psi(1) = 1.
///
/// g(s) = Phi(s) + Psi(1/s) - 1 is nonnegative by Young's inequality and
/// vanishes exactly where 1/s is a subgradient of Phi at s, so the scale is
/// the root of the increasing function s Phi'(s) - 1, located on a doubling
/// bracket. Throws NoRoot if no admissible s exists or |g(s)| > tol.
ComplementaryPair normalize_pair(const YoungFunction& phi, double tol = 1e-10);

/// Conjugate pair without rescaling.
ComplementaryPair make_pair(const YoungFunction& phi);

/// Smallest sampled C with Phi(2x) <= C Phi(x) on the grid, or nullopt when the
/// ratio grows without bound along the tail of the grid.
std::optional<Delta2Witness> check_delta2(const YoungFunction& phi,
                                          std::span<const double> x_grid);

struct OrderSearchOptions {
  double x_min = 1e-4;
  double x_max = 1e4;
  int coarse_points = 81;
  int refine_factor = 10;
  int max_log2_const = 10;  // a, c in {2^-k}, b, d in {2^k}, k <= this
};

/// Grid search for an OrderingWitness of phi1 < phi2, validated on a grid
/// `refine_factor` times finer than the search grid.
std::optional<OrderingWitness> check_order(const YoungFunction& phi1,
                                           const YoungFunction& phi2,
                                           const OrderSearchOptions& opts = {});

/// Smallest x >= 0 with Phi(x) >= y, to relative accuracy `rel_tol`.
double young_inverse(const YoungFunction& phi, double y, double rel_tol = 1e-15);

/// Midpoint-convexity and secant-slope scan on a log grid over [lo, hi].
bool sample_convexity(const YoungFunction& phi, double lo, double hi, int n = 400,
                      double tol = 1e-9);

// Built-in gauges ---------------------------------------------------------

YoungFunction power_young(double p);        // x^p / p, p >= 1
YoungFunction exp_minus_young();            // e^x - x - 1
YoungFunction cosh_minus_young();           // cosh x - 1
YoungFunction xp_log_young(double p);       // 0 on [0,1], x^p ln x beyond, p >= 1
YoungFunction riordan_young(double p);      // 1 < p < 2
/// Closed-form partner quoted for the Riordan gauge:
/// x^q/q L(x)^{q/p} away from the join, joined by a chord.
YoungFunction riordan_dual_young(double p);

/// Join points chosen for a Riordan-type gauge.
struct LogPowerJoin {
  double x0 = 0.0;  // upper piece starts here
  double x1 = 0.0;  // lower piece ends here
  double slope = 0.0;
};
LogPowerJoin riordan_join(double p);

/// Builds a gauge from a string spec: "power:1.5", "quadratic", "exp_minus"
/// (alias "exp"), "cosh_minus" (alias "cosh"), "xp_log:p", "riordan:p",
/// "riordan_dual:p". Throws ParseError or BadParam.
YoungFunction builtin_young(const std::string& spec);

/// Representative specs for listings.
std::vector<std::string> builtin_young_specs();

/// Reference gauge Phi0(t) = t^2 / 2 for the ordering hypothesis.
inline YoungFunction quadratic_young() { return power_young(2.0); }

}  // namespace orlicz
