#include "orlicz/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double threshold_of(const YoungFunction& phi, const GaugeOptions& opts) {
  return opts.classical_threshold ? 1.0 : phi(1.0);
}

std::vector<double> magnitudes(const SampledFunction& f) {
  std::vector<double> a(f.values.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]);
  return a;
}

void check_exponent(double p) {
  if (!(p >= 1.0)) throw BadExponent("exponent must be >= 1");
}

}  // namespace

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::bisection: return "bisection";
    case NormMethod::closed_form: return "closed-form";
    case NormMethod::dense_scan: return "dense-scan";
  }
  return "unknown";
}

DualProfile profile(const SpectralCoefficients& sigma) {
  DualProfile out;
  for (const auto& [label, blk] : sigma.blocks()) {
    out.labels.push_back(label);
    out.F.push_back(blk.m.norm() / std::sqrt(static_cast<double>(blk.info.k)));
    out.d.push_back(blk.info.d);
    out.k.push_back(blk.info.k);
  }
  return out;
}

double modular(const YoungFunction& phi, std::span<const double> magnitudes,
               std::span<const double> weights) {
  double s = 0.0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (magnitudes[i] == 0.0) continue;
    const double v = phi(magnitudes[i]);
    if (!std::isfinite(v)) return kInf;
    s += weights[i] * v;
  }
  return s;
}

double modular(const YoungFunction& phi, const SampledFunction& f) {
  return modular(phi, magnitudes(f), f.quad->weights);
}

NormResult gauge(const YoungFunction& phi, std::span<const double> a, std::span<const double> w,
                 double threshold, const GaugeOptions& opts) {
  NormResult res;
  res.method = NormMethod::bisection;
  double amax = 0.0, wsum = 0.0, wa = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    amax = std::max(amax, a[i]);
    wsum += w[i];
    wa += w[i] * a[i];
  }
  if (amax == 0.0) {
    res.method = NormMethod::closed_form;
    return res;
  }
  if (!(threshold > 0.0)) throw BadParam("gauge threshold must be positive for " + phi.label);

  auto excess = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      const double v = phi(a[i] / lambda);
      if (!std::isfinite(v)) return kInf;
      s += w[i] * v;
    }
    return s - threshold;
  };

  auto inverse = [&](double y) {
    try {
      return young_inverse(phi, y, 1e-3);  // only seeds the bracket
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  // Jensen gives the lower end, the sup bound the upper end.
  const double inv = inverse(threshold / wsum);
  double lo = (wa / wsum) / inv;
  double hi = amax / inv;
  if (!std::isfinite(lo) || !(lo > 0.0)) lo = amax * 1e-300;
  if (!std::isfinite(hi) || !(hi > lo)) hi = std::max(2 * lo, amax);
  int grow = 0;
  while (!(excess(hi) <= 0.0)) {
    hi *= 2;
    if (++grow > 2000 || !std::isfinite(hi))
      throw NonFiniteModular("modular of " + phi.label + " stays above threshold on the bracket");
  }
  while (excess(lo) <= 0.0 && lo > 0.0) lo *= 0.5;
  if (!(lo > 0.0)) {
    res.value = hi;
    res.upper = hi;
    return res;
  }
  const Bracket br = find_root(excess, lo, hi, RootOptions{0.0, opts.rel_tol, opts.max_iter});
  // br.hi satisfies the defining inequality; keep it as the value.
  res.value = br.f_hi <= 0.0 ? br.hi : br.lo;
  res.lower = br.lo;
  res.upper = br.hi;
  res.refinement_error = br.hi - br.lo;
  res.iterations = br.iterations;
  return res;
}

NormResult luxemburg(const YoungFunction& phi, const SampledFunction& f, const GaugeOptions& opts) {
  if (!f.quad) throw BadParam("sampled function without quadrature");
  const auto a = magnitudes(f);
  return gauge(phi, a, f.quad->weights, threshold_of(phi, opts), opts);
}

double orlicz_norm_amemiya(const YoungFunction& phi, const SampledFunction& f) {
  const auto a = magnitudes(f);
  const double T = phi(1.0);
  double amax = 0.0;
  for (double v : a) amax = std::max(amax, v);
  if (amax == 0.0) return 0.0;
  auto obj = [&](double logk) {
    const double k = std::exp(logk);
    std::vector<double> ka(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ka[i] = k * a[i];
    const double r = modular(phi, ka, f.quad->weights);
    return -(T + r) / k;
  };
  // The minimizer sits near 1 / N_Phi(f); search a wide window around it.
  const double center = -std::log(amax);
  double lo = center - 40.0;
  double hi = center + 40.0;
  const auto best = golden_section_max(obj, lo, hi, 1e-12, 400);
  return -best.value;
}

NormResult orlicz_norm(const ComplementaryPair& pair, const SampledFunction& f,
                       const GaugeOptions& opts) {
  const YoungFunction& phi = pair.phi;
  if (!phi.deriv) throw BadParam("orlicz norm needs the derivative of " + phi.label);
  const auto a = magnitudes(f);
  const auto& w = f.quad->weights;
  NormResult res;
  res.method = NormMethod::bisection;
  const NormResult lux = luxemburg(phi, f, opts);
  if (lux.value == 0.0) {
    res.method = NormMethod::closed_form;
    return res;
  }
  const double T = threshold_of(phi, opts);
  // rho_Psi(Phi'(x)) = x Phi'(x) - Phi(x) by equality in Young's inequality.
  auto constraint = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      const double x = a[i] / mu;
      const double v = x * phi.deriv(x) - phi(x);
      if (!std::isfinite(v)) return kInf;
      s += w[i] * std::max(0.0, v);
    }
    return s - T;
  };
  auto value_at = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0.0) s += w[i] * a[i] * phi.deriv(a[i] / mu);
    return s;
  };
  double lo = lux.value;
  double hi = lux.value;
  int guard = 0;
  while (!(constraint(hi) <= 0.0)) {
    hi *= 2;
    if (++guard > 2000) throw NonFiniteModular("dual constraint never satisfied for " + phi.label);
  }
  guard = 0;
  while (constraint(lo) <= 0.0) {
    lo *= 0.5;
    if (++guard > 2000) break;
  }
  double mu = hi;
  if (constraint(lo) > 0.0) {
    const Bracket br = find_root(constraint, lo, hi, RootOptions{0.0, opts.rel_tol, opts.max_iter});
    mu = br.f_hi <= 0.0 ? br.hi : br.lo;
    res.iterations = br.iterations;
  }
  res.value = value_at(mu);
  const double amemiya = orlicz_norm_amemiya(phi, f);
  res.refinement_error = std::abs(res.value - amemiya);
  res.lower = phi(1.0) * lux.value;
  res.upper = 2.0 * lux.value;
  return res;
}

double lp_norm(const SampledFunction& f, double p) {
  check_exponent(p);
  const auto a = magnitudes(f);
  double amax = 0.0;
  for (double v : a) amax = std::max(amax, v);
  if (std::isinf(p) || amax == 0.0) return amax;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += f.quad->weights[i] * std::pow(a[i] / amax, p);
  return amax * std::pow(s, 1.0 / p);
}

double dual_lp(const SpectralCoefficients& sigma, double p) {
  check_exponent(p);
  double tmax = 0.0;
  std::vector<double> t;  // k^{-1/2} ||sigma||_HS
  std::vector<double> wts;
  for (const auto& [label, blk] : sigma.blocks()) {
    const double k = blk.info.k;
    t.push_back(blk.m.norm() / std::sqrt(k));
    wts.push_back(blk.info.d * k);
    tmax = std::max(tmax, t.back());
  }
  if (std::isinf(p) || tmax == 0.0) return tmax;
  // d k^{1 - p/2} h^p = d k (h / sqrt k)^p
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += wts[i] * std::pow(t[i] / tmax, p);
  return tmax * std::pow(s, 1.0 / p);
}

std::vector<double> singular_values(const Eigen::MatrixXcd& block, int k) {
  const Eigen::MatrixXcd R = block.topRows(k);
  const Eigen::MatrixXcd H = R * R.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double top = ev.size() ? ev.maxCoeff() : 0.0;
  std::vector<double> s;
  for (Eigen::Index i = ev.size(); i-- > 0;) {
    const double e = ev(i);
    s.push_back(e > 1e-13 * top && e > 0.0 ? std::sqrt(e) : 0.0);
  }
  return s;
}

double dual_schatten(const SpectralCoefficients& sigma, double p) {
  check_exponent(p);
  std::vector<std::vector<double>> svs;
  std::vector<int> ds;
  double smax = 0.0;
  for (const auto& [label, blk] : sigma.blocks()) {
    svs.push_back(singular_values(blk.m, blk.info.k));
    ds.push_back(blk.info.d);
    if (!svs.back().empty()) smax = std::max(smax, svs.back().front());
  }
  if (std::isinf(p) || smax == 0.0) return smax;
  double s = 0.0;
  for (std::size_t i = 0; i < svs.size(); ++i) {
    double t = 0.0;
    for (double v : svs[i]) t += std::pow(v / smax, p);
    s += ds[i] * t;
  }
  return smax * std::pow(s, 1.0 / p);
}

NormResult dual_orlicz(const YoungFunction& phi, const DualProfile& prof, const GaugeOptions& opts) {
  std::vector<double> w(prof.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<double>(prof.k[i]) * prof.d[i];
  return gauge(phi, prof.F, w, threshold_of(phi, opts), opts);
}

NormResult dual_orlicz(const YoungFunction& phi, const SpectralCoefficients& sigma,
                       const GaugeOptions& opts) {
  return dual_orlicz(phi, profile(sigma), opts);
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfExponent;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("bad exponent '" + text + "'");
  return v;
}

NormSpec parse_norm_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("norm spec needs a kind and an argument: '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  NormSpec s;
  if (kind == "lux") { s.kind = NormSpec::Kind::lux; s.young = arg; }
  else if (kind == "orlicz") { s.kind = NormSpec::Kind::orlicz; s.young = arg; }
  else if (kind == "dual-orlicz") { s.kind = NormSpec::Kind::dual_orlicz; s.young = arg; }
  else if (kind == "lp") { s.kind = NormSpec::Kind::lp; s.p = parse_exponent(arg); }
  else if (kind == "dual-lp") { s.kind = NormSpec::Kind::dual_lp; s.p = parse_exponent(arg); }
  else if (kind == "dual-sch") { s.kind = NormSpec::Kind::dual_sch; s.p = parse_exponent(arg); }
  else throw ParseError("unknown norm kind '" + kind + "'");
  if (!s.young.empty()) (void)builtin_young(s.young);
  if (s.young.empty() && !(s.p >= 1.0)) throw BadExponent("exponent must be >= 1");
  return s;
}

double evaluate_norm(const NormSpec& spec, const SampledFunction& f, int band) {
  switch (spec.kind) {
    case NormSpec::Kind::lux: return luxemburg(builtin_young(spec.young), f).value;
    case NormSpec::Kind::orlicz: return orlicz_norm(make_pair(builtin_young(spec.young)), f).value;
    case NormSpec::Kind::lp: return lp_norm(f, spec.p);
    default: break;
  }
  const auto sigma = analyze(f, band);
  switch (spec.kind) {
    case NormSpec::Kind::dual_lp: return dual_lp(sigma, spec.p);
    case NormSpec::Kind::dual_sch: return dual_schatten(sigma, spec.p);
    default: return dual_orlicz(builtin_young(spec.young), sigma).value;
  }
}

}  // namespace orlicz
