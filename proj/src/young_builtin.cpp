#include <charconv>
#include <cmath>
#include <string>

#include "orlicz/error.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

namespace {

std::string fmt_num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(v);
}

// x^e/e * L(x)^r with L = ln x ln ln x above the join and
// L = ln(1/x) ln ln(1/x) below it.
struct LogPower {
  double e;
  double r;

  double upper(double x) const {
    const double lx = std::log(x);
    const double L = lx * std::log(lx);
    return std::pow(x, e) / e * std::pow(L, r);
  }
  double upper_deriv(double x) const {
    const double lx = std::log(x);
    const double llx = std::log(lx);
    const double L = lx * llx;
    return std::pow(x, e - 1) * std::pow(L, r - 1) * (L + (r / e) * (llx + 1.0));
  }
  double lower(double x) const {
    const double u = -std::log(x);
    const double M = u * std::log(u);
    return std::pow(x, e) / e * std::pow(M, r);
  }
  double lower_deriv(double x) const {
    const double u = -std::log(x);
    const double lu = std::log(u);
    const double M = u * lu;
    return std::pow(x, e - 1) * std::pow(M, r - 1) * (M - (r / e) * (lu + 1.0));
  }
};

template <class F>
bool increasing_on(F&& f, double lo, double hi) {
  const auto grid = log_grid(lo, hi, 64);
  double prev = f(grid.front());
  if (!(prev > 0.0)) return false;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

LogPowerJoin choose_join(const LogPower& lp) {
  auto up = [&](double x) { return lp.upper_deriv(x); };
  auto low = [&](double x) { return lp.lower_deriv(x); };
  // Smallest power of two >= e^2 where the upper derivative increases, and
  // the mirrored choice below e^-2.
  double x0 = 8.0;
  while (!increasing_on(up, x0, 4 * x0)) {
    x0 *= 2;
    if (x0 > 1e100) throw BadParam("no convex upper piece");
  }
  double x1 = 0.125;
  while (!increasing_on(low, x1 / 4, x1)) {
    x1 /= 2;
    if (x1 < 1e-100) throw BadParam("no convex lower piece");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double slope = (lp.upper(x0) - lp.lower(x1)) / (x0 - x1);
    if (lp.lower_deriv(x1) <= slope && slope <= lp.upper_deriv(x0)) return {x0, x1, slope};
    x0 *= 2;
    x1 /= 2;
  }
  throw BadParam("chord join never convex");
}

YoungFunction log_power_young(const LogPower& lp, const std::string& label) {
  const LogPowerJoin j = choose_join(lp);
  const double y1 = lp.lower(j.x1);
  YoungFunction f;
  f.label = label;
  f.kinks = {j.x1, j.x0};
  f.eval = [lp, j, y1](double x) {
    if (x <= 0.0) return 0.0;
    if (x <= j.x1) return lp.lower(x);
    if (x < j.x0) return y1 + j.slope * (x - j.x1);
    return lp.upper(x);
  };
  f.deriv = [lp, j](double x) {
    if (x <= 0.0) return 0.0;
    if (x < j.x1) return lp.lower_deriv(x);
    if (x < j.x0) return j.slope;
    return lp.upper_deriv(x);
  };
  return f;
}

void check_riordan_p(double p) {
  if (!(p > 1.0 && p < 2.0)) throw BadParam("riordan exponent must lie in (1, 2), got " + fmt_num(p));
}

}  // namespace

YoungFunction power_young(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw BadParam("power exponent must be >= 1, got " + fmt_num(p));
  YoungFunction f;
  f.label = "power:" + fmt_num(p);
  f.eval = [p](double x) { return std::pow(x, p) / p; };
  f.deriv = [p](double x) { return p == 1.0 ? 1.0 : std::pow(x, p - 1.0); };
  return f;
}

YoungFunction exp_minus_young() {
  YoungFunction f;
  f.label = "exp_minus";
  f.eval = [](double x) {
    if (x < 1e-3) return x * x * (0.5 + x * (1.0 / 6 + x * (1.0 / 24 + x / 120)));
    return std::expm1(x) - x;
  };
  f.deriv = [](double x) { return std::expm1(x); };
  return f;
}

YoungFunction cosh_minus_young() {
  YoungFunction f;
  f.label = "cosh_minus";
  f.eval = [](double x) {
    const double s = std::sinh(0.5 * x);
    return 2.0 * s * s;
  };
  f.deriv = [](double x) { return std::sinh(x); };
  return f;
}

YoungFunction xp_log_young(double p) {
  // For p >= 1 the clamped function is already convex (derivative jumps from 0
  // to 1 at x = 1 and x^p ln x is convex beyond), so no chord is needed.
  if (!(p >= 1.0) || !std::isfinite(p)) throw BadParam("xp_log exponent must be >= 1, got " + fmt_num(p));
  YoungFunction f;
  f.label = "xp_log:" + fmt_num(p);
  f.kinks = {1.0};
  f.eval = [p](double x) { return x <= 1.0 ? 0.0 : std::pow(x, p) * std::log(x); };
  f.deriv = [p](double x) {
    if (x < 1.0) return 0.0;
    return std::pow(x, p - 1.0) * (p * std::log(x) + 1.0);
  };
  return f;
}

LogPowerJoin riordan_join(double p) {
  check_riordan_p(p);
  return choose_join(LogPower{p, 1.0});
}

YoungFunction riordan_young(double p) {
  check_riordan_p(p);
  return log_power_young(LogPower{p, 1.0}, "riordan:" + fmt_num(p));
}

YoungFunction riordan_dual_young(double p) {
  check_riordan_p(p);
  const double q = p / (p - 1.0);
  return log_power_young(LogPower{q, q / p}, "riordan_dual:" + fmt_num(p));
}

YoungFunction builtin_young(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  double param = 0.0;
  const bool has_param = colon != std::string::npos;
  if (has_param) {
    const std::string arg = spec.substr(colon + 1);
    const char* first = arg.data();
    const char* last = arg.data() + arg.size();
    auto [ptr, ec] = std::from_chars(first, last, param);
    if (ec != std::errc{} || ptr != last || arg.empty())
      throw ParseError("bad numeric parameter in young spec '" + spec + "'");
  }
  auto need = [&](bool want) {
    if (want != has_param)
      throw ParseError("young spec '" + spec + (want ? "' needs a parameter" : "' takes no parameter"));
  };
  if (name == "power") { need(true); return power_young(param); }
  if (name == "quadratic") { need(false); return power_young(2.0); }
  if (name == "exp" || name == "exp_minus") { need(false); return exp_minus_young(); }
  if (name == "cosh" || name == "cosh_minus") { need(false); return cosh_minus_young(); }
  if (name == "xp_log") { need(true); return xp_log_young(param); }
  if (name == "riordan") { need(true); return riordan_young(param); }
  if (name == "riordan_dual") { need(true); return riordan_dual_young(param); }
  throw ParseError("unknown young function '" + spec + "'");
}

std::vector<std::string> builtin_young_specs() {
  return {"cosh_minus", "exp_minus", "power:1.5", "power:2", "quadratic",
          "riordan:1.5", "riordan_dual:1.5", "xp_log:1.5"};
}

}  // namespace orlicz
