#include "orlicz/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "orlicz/error.hpp"

namespace orlicz {

namespace {

bool same_sign(double a, double b) { return (a > 0 && b > 0) || (a < 0 && b < 0); }

double midpoint(double lo, double hi) {
  // Geometric midpoint for wide positive brackets keeps bisection scale-free.
  if (lo > 0 && hi > 4 * lo) return std::sqrt(lo) * std::sqrt(hi);
  return lo + 0.5 * (hi - lo);
}

}  // namespace

Bracket find_root(const std::function<double(double)>& f, double lo, double hi,
                  const RootOptions& opts) {
  if (lo > hi) std::swap(lo, hi);
  Bracket br{lo, hi, f(lo), f(hi), 0};
  if (std::isnan(br.f_lo) || std::isnan(br.f_hi))
    throw NoRoot("function is NaN at bracket endpoint");
  if (same_sign(br.f_lo, br.f_hi)) throw NoRoot("no sign change on bracket");

  auto converged = [&](double a, double b) {
    const double scale = std::min(std::abs(a), std::abs(b));
    return b - a <= std::max(opts.abs_tol, opts.rel_tol * scale);
  };

  if (br.f_lo == 0.0) { br.hi = br.lo; br.f_hi = 0.0; return br; }
  if (br.f_hi == 0.0) { br.lo = br.hi; br.f_lo = 0.0; return br; }

  // Bisect until both endpoint values are finite.
  while (!(std::isfinite(br.f_lo) && std::isfinite(br.f_hi))) {
    if (converged(br.lo, br.hi) || br.iterations >= opts.max_iter) return br;
    const double mid = midpoint(br.lo, br.hi);
    const double fm = f(mid);
    ++br.iterations;
    if (std::isnan(fm)) throw NoRoot("function is NaN inside bracket");
    if (fm == 0.0) return Bracket{mid, mid, 0.0, 0.0, br.iterations};
    if (same_sign(fm, br.f_lo)) { br.lo = mid; br.f_lo = fm; }
    else { br.hi = mid; br.f_hi = fm; }
  }

  // Wide positive brackets: geometric bisection first so TOMS 748 starts
  // from a bracket whose ends differ by at most a factor of 4.
  while (br.lo > 0 && br.hi > 4 * br.lo && br.iterations < opts.max_iter) {
    const double mid = midpoint(br.lo, br.hi);
    const double fm = f(mid);
    ++br.iterations;
    if (fm == 0.0) return Bracket{mid, mid, 0.0, 0.0, br.iterations};
    if (same_sign(fm, br.f_lo)) { br.lo = mid; br.f_lo = fm; }
    else { br.hi = mid; br.f_hi = fm; }
  }
  if (converged(br.lo, br.hi)) return br;

  std::uintmax_t iters = static_cast<std::uintmax_t>(std::max(1, opts.max_iter - br.iterations));
  auto tol = [&](double a, double b) { return converged(std::min(a, b), std::max(a, b)); };
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, br.lo, br.hi, br.f_lo, br.f_hi, tol, iters);
  br.iterations += static_cast<int>(iters);
  br.lo = a;
  br.hi = b;
  br.f_lo = f(a);
  br.f_hi = f(b);
  br.iterations += 2;
  return br;
}

GoldenResult golden_section_max(const std::function<double(double)>& f, double a,
                                double b, double tol, int max_iter) {
  const double inv_phi = 1.0 / std::numbers::phi;
  if (a > b) std::swap(a, b);
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (b - a <= tol * std::max(1.0, std::abs(0.5 * (a + b)))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
  }
  GoldenResult best{c, fc, it};
  if (fd > best.value) best = {d, fd, it};
  return best;
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw BadParam("Gauss-Legendre rule needs n >= 1");
  // P_n(x) and P_{n-1}(x) by the three-term recurrence.
  auto legendre = [n](double x) {
    double prev = 1.0;
    double cur = x;
    for (int k = 2; k <= n; ++k) {
      const double next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
      prev = cur;
      cur = next;
    }
    return std::pair{cur, prev};
  };
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, pm] = legendre(x);
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const auto [pn, pm] = legendre(x);
    dp = n * (x * pn - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) { g[0] = a; return g; }
  const double la = std::log(a);
  const double step = (std::log(b) - la) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(la + i * step);
  g.front() = a;
  g.back() = b;
  return g;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) { g[0] = a; return g; }
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return g;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace orlicz
