#include "orlicz/young.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>

#include "orlicz/error.hpp"

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ConjugateState {
  YoungFunction phi;
  ConjugateOptions opts;
};

double golden_maximizer(const ConjugateState& st, double y) {
  const auto& phi = st.phi;
  auto objective = [&](double x) {
    const double v = phi(x);
    return std::isfinite(v) ? x * y - v : -kInf;
  };
  double hi = 1.0;
  while (objective(2 * hi) > objective(hi)) {
    hi *= 2;
    if (hi > st.opts.x_cap)
      throw BracketOverflow("conjugate maximizer of " + phi.label + " exceeds x_cap at y=" +
                            std::to_string(y));
  }
  const auto best = golden_section_max(objective, 0.0, 2 * hi, 1e-13, 400);
  return objective(0.0) >= best.value ? 0.0 : best.x;
}

// sup{x >= 0 : Phi'(x) <= y}; the point where x y - Phi(x) peaks.
double maximizer(const ConjugateState& st, double y) {
  y = std::abs(y);
  if (y == 0.0) return 0.0;
  const auto& phi = st.phi;
  if (!phi.deriv) return golden_maximizer(st, y);
  const double d0 = phi.deriv(0.0);
  if (std::isnan(d0)) return golden_maximizer(st, y);
  if (d0 >= y) return 0.0;

  const double cap = phi.domain_hint ? std::min(st.opts.x_cap, *phi.domain_hint) : st.opts.x_cap;
  double lo = 0.0;
  double hi = 1.0;
  if (phi.deriv(1.0) >= y) {
    constexpr double tiny = 1e-300;
    while (hi > tiny && phi.deriv(0.5 * hi) >= y) hi *= 0.5;
    if (hi <= tiny) return 0.0;  // deriv jumps past y at 0+
    lo = 0.5 * hi;
  } else {
    lo = 1.0;
    for (;;) {
      const double next = 2 * lo;
      if (next > cap && lo < cap && phi.deriv(cap) >= y) {
        hi = cap;
        break;
      }
      if (next > cap) {
        if (phi.domain_hint && next > *phi.domain_hint && *phi.domain_hint <= st.opts.x_cap) {
          // Phi is +inf past its domain: the supremum sits on the boundary.
          if (phi.deriv(*phi.domain_hint) < y) return *phi.domain_hint;
          hi = *phi.domain_hint;
          break;
        }
        throw BracketOverflow("conjugate maximizer of " + phi.label + " exceeds x_cap at y=" +
                              std::to_string(y));
      }
      const double dn = phi.deriv(next);
      if (std::isnan(dn)) return golden_maximizer(st, y);
      if (dn >= y) { hi = next; break; }
      lo = next;
    }
  }
  for (double k : phi.kinks) {
    if (!(k > lo && k <= hi)) continue;
    if (phi.deriv(k) >= y) {
      // Left limit below y: the supremum is the kink itself.
      if (phi.deriv(std::nextafter(k, 0.0)) < y) return k;
      hi = k;
    } else {
      lo = k;
    }
  }
  auto g = [&](double x) { return phi.deriv(x) - y; };
  const Bracket br = find_root(g, lo, hi, st.opts.root);
  return br.hi;
}

std::string fmt_num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(v);
}

}  // namespace

YoungFunction conjugate(const YoungFunction& phi, const ConjugateOptions& opts) {
  if (opts.check_convexity) {
    // Nested conjugates may only be evaluable on part of the range.
    double hi = 1e6;
    for (;;) {
      try {
        (void)phi(hi);
        break;
      } catch (const BracketOverflow&) {
        hi /= 10;
        if (hi < 1e-3) throw;
      }
    }
    if (!sample_convexity(phi, std::min(1e-6, hi / 10), hi))
      throw NonConvexInput(phi.label + " fails convexity sampling");
  }
  auto st = std::make_shared<const ConjugateState>(ConjugateState{phi, opts});
  YoungFunction psi;
  psi.label = "conj(" + phi.label + ")";
  psi.eval = [st](double y) {
    const double x = maximizer(*st, y);
    if (x == 0.0) return 0.0;
    const double v = x * std::abs(y) - st->phi(x);
    return std::max(0.0, v);
  };
  psi.deriv = [st](double y) { return maximizer(*st, y); };
  return psi;
}

YoungFunction scaled(const YoungFunction& phi, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw BadParam("scale must be positive and finite");
  if (s == 1.0) return phi;
  YoungFunction out;
  out.label = phi.label + "@" + fmt_num(s);
  out.eval = [f = phi.eval, s](double x) { return f(s * x); };
  if (phi.deriv) out.deriv = [d = phi.deriv, s](double x) { return s * d(s * x); };
  if (phi.domain_hint) out.domain_hint = *phi.domain_hint / s;
  for (double k : phi.kinks) out.kinks.push_back(k / s);
  return out;
}

ComplementaryPair make_pair(const YoungFunction& phi) {
  ComplementaryPair pair{phi, conjugate(phi), false, 1.0};
  pair.normalized = std::abs(pair.phi(1.0) + pair.psi(1.0) - 1.0) <= 1e-10;
  return pair;
}

ComplementaryPair normalize_pair(const YoungFunction& phi, double tol) {
  if (!phi.deriv) throw NoRoot("normalization needs a derivative for " + phi.label);
  auto h = [&](double s) { return s * phi.deriv(s) - 1.0; };
  double s = 1.0;
  if (h(1.0) != 0.0) {
    constexpr double s_min = 1e-12;
    constexpr double s_max = 1e12;
    double lo = 1.0;
    double hi = 1.0;
    if (h(1.0) < 0.0) {
      while (h(hi) < 0.0) {
        hi *= 2;
        if (hi > s_max) throw NoRoot(phi.label + " is not normalizable by scaling");
      }
      lo = 0.5 * hi;
    } else {
      while (h(lo) > 0.0) {
        lo *= 0.5;
        if (lo < s_min) throw NoRoot(phi.label + " is not normalizable by scaling");
      }
      hi = 2 * lo;
    }
    const Bracket br = find_root(h, lo, hi, RootOptions{0.0, 1e-15, 400});
    s = std::abs(br.f_lo) < std::abs(br.f_hi) ? br.lo : br.hi;
  }
  ComplementaryPair pair;
  pair.phi = scaled(phi, s);
  pair.psi = conjugate(pair.phi);
  pair.scale = s;
  const double g = pair.phi(1.0) + pair.psi(1.0) - 1.0;
  if (!(std::abs(g) <= tol))
    throw NoRoot(phi.label + ": Phi(s)+Psi(1/s)-1 = " + std::to_string(g) + " at best scale");
  pair.normalized = true;
  return pair;
}

double young_inverse(const YoungFunction& phi, double y, double rel_tol) {
  if (!(y > 0.0)) return 0.0;
  if (std::isinf(y)) return kInf;
  double lo = 0.0;
  double hi = 1.0;
  if (phi(1.0) >= y) {
    while (hi > 1e-300 && phi(0.5 * hi) >= y) hi *= 0.5;
    if (hi <= 1e-300) return 0.0;
    lo = 0.5 * hi;
  } else {
    lo = 1.0;
    while (phi(2 * lo) < y) {
      lo *= 2;
      if (lo > 1e300) throw BracketOverflow("inverse of " + phi.label + " unbounded");
    }
    hi = 2 * lo;
  }
  const Bracket br = find_root([&](double x) { return phi(x) - y; }, lo, hi,
                               RootOptions{0.0, rel_tol, 400});
  return br.hi;
}

bool sample_convexity(const YoungFunction& phi, double lo, double hi, int n, double tol) {
  if (phi(0.0) != 0.0) return false;
  const auto grid = log_grid(lo, hi, n);
  double prev_val = 0.0;
  double prev_x = 0.0;
  double prev_slope = -kInf;
  for (double x : grid) {
    const double v = phi(x);
    if (std::isnan(v) || v < 0.0) return false;
    if (std::isinf(v)) break;  // extended-real tail is convex
    if (v + tol * (1.0 + std::abs(v)) < prev_val) return false;
    const double slope = (v - prev_val) / (x - prev_x);
    if (slope + tol * (1.0 + std::abs(slope)) < prev_slope) return false;
    const double mid = 0.5 * (x + prev_x);
    const double vm = phi(mid);
    const double chord = 0.5 * (v + prev_val);
    if (vm > chord + tol * (1.0 + std::abs(chord))) return false;
    prev_slope = slope;
    prev_val = v;
    prev_x = x;
  }
  return true;
}

std::optional<Delta2Witness> check_delta2(const YoungFunction& phi,
                                          std::span<const double> x_grid) {
  std::vector<double> ratios;
  ratios.reserve(x_grid.size());
  for (double x : x_grid) {
    const double base = phi(x);
    const double doubled = phi(2 * x);
    if (!(base > 0.0)) continue;
    if (!std::isfinite(doubled) || !std::isfinite(base)) return std::nullopt;
    ratios.push_back(doubled / base);
  }
  if (ratios.empty()) return std::nullopt;
  const std::size_t tail = std::max<std::size_t>(4, ratios.size() / 4);
  if (ratios.size() >= tail) {
    const std::size_t start = ratios.size() - tail;
    bool increasing = true;
    for (std::size_t i = start + 1; i < ratios.size(); ++i)
      if (!(ratios[i] > ratios[i - 1] * (1.0 + 1e-12))) { increasing = false; break; }
    if (increasing && ratios.back() > 2.0 * ratios[start]) return std::nullopt;
  }
  return Delta2Witness{*std::max_element(ratios.begin(), ratios.end()), x_grid.front()};
}

namespace {

bool dominated(const YoungFunction& lhs, double scale_in, const YoungFunction& rhs,
               double scale_out, std::span<const double> xs) {
  for (double x : xs) {
    const double l = lhs(scale_in * x);
    const double r = scale_out * rhs(x);
    if (!(l <= r * (1.0 + 1e-12) + 1e-300)) return false;
  }
  return true;
}

// True when lhs(scale_in x) / rhs(x) climbs steadily toward the far end of the
// grid (the large-x end when `at_end`, else the small-x end), so that no
// constant found on a finite grid can be trusted to hold beyond it.
bool ratio_runs_away(const YoungFunction& lhs, double scale_in, const YoungFunction& rhs,
                     std::span<const double> xs, bool at_end) {
  std::vector<double> r;
  for (double x : xs) {
    const double den = rhs(x);
    const double num = lhs(scale_in * x);
    if (den > 0.0 && std::isfinite(den) && std::isfinite(num)) r.push_back(num / den);
  }
  if (r.size() < 8) return false;
  if (!at_end) std::reverse(r.begin(), r.end());
  const std::size_t start = r.size() - r.size() / 4;
  for (std::size_t i = start + 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1] * (1.0 + 1e-12))) return false;
  return r.back() > 2.0 * r[start];
}

std::vector<double> thresholds(double lo, double hi) {
  std::vector<double> t;
  for (int k = -80; k <= 80; ++k) {
    const double v = std::ldexp(1.0, k);
    if (v >= lo && v <= hi) t.push_back(v);
  }
  return t;
}

}  // namespace

std::optional<OrderingWitness> check_order(const YoungFunction& phi1, const YoungFunction& phi2,
                                           const OrderSearchOptions& opts) {
  const auto coarse = log_grid(opts.x_min, opts.x_max, opts.coarse_points);
  const int fine_n = (opts.coarse_points - 1) * opts.refine_factor + 1;
  const auto fine = log_grid(opts.x_min, opts.x_max, fine_n);
  const int K = opts.max_log2_const;

  auto tail = [](const std::vector<double>& g, double t) {
    auto it = std::lower_bound(g.begin(), g.end(), t * (1 - 1e-14));
    return std::span<const double>(g.data() + (it - g.begin()), static_cast<std::size_t>(g.end() - it));
  };
  auto head = [](const std::vector<double>& g, double t) {
    auto it = std::upper_bound(g.begin(), g.end(), t * (1 + 1e-14));
    return std::span<const double>(g.data(), static_cast<std::size_t>(it - g.begin()));
  };

  OrderingWitness w;
  bool large_ok = false;
  // phi1(a x) <= b phi2(x) for x >= x0: smallest power-of-two threshold.
  const auto large_t = thresholds(opts.x_min, opts.x_max / 16);
  for (int total = 0; total <= 2 * K && !large_ok; ++total) {
    for (int ka = 0; ka <= std::min(total, K) && !large_ok; ++ka) {
      const int kb = total - ka;
      if (kb > K) continue;
      const double a = std::ldexp(1.0, -ka);
      const double b = std::ldexp(1.0, kb);
      for (double t : large_t) {
        if (!dominated(phi1, a, phi2, b, tail(coarse, t))) continue;
        if (dominated(phi1, a, phi2, b, tail(fine, t))) {
          w.a = a; w.b = b; w.x0 = t;
          large_ok = true;
        }
        break;
      }
    }
  }
  if (!large_ok || ratio_runs_away(phi1, w.a, phi2, tail(fine, w.x0), true)) return std::nullopt;

  bool small_ok = false;
  // phi2(c x) <= d phi1(x) for x <= x1: largest power-of-two threshold.
  auto small_t = thresholds(16 * opts.x_min, opts.x_max);
  std::reverse(small_t.begin(), small_t.end());
  for (int total = 0; total <= 2 * K && !small_ok; ++total) {
    for (int kc = 0; kc <= std::min(total, K) && !small_ok; ++kc) {
      const int kd = total - kc;
      if (kd > K) continue;
      const double c = std::ldexp(1.0, -kc);
      const double d = std::ldexp(1.0, kd);
      for (double t : small_t) {
        if (!dominated(phi2, c, phi1, d, head(coarse, t))) continue;
        if (dominated(phi2, c, phi1, d, head(fine, t))) {
          w.c = c; w.d = d; w.x1 = t;
          small_ok = true;
        }
        break;
      }
    }
  }
  if (!small_ok || ratio_runs_away(phi2, w.c, phi1, head(fine, w.x1), false)) return std::nullopt;
  return w;
}

}  // namespace orlicz
