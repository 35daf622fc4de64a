#include "orlicz/verify.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"

namespace orlicz {

namespace {

constexpr double kRefineOk = 1e-6;

struct Setup {
  std::shared_ptr<const HomogeneousSpace> space;
  std::shared_ptr<const Quadrature> quad;
  int oversample;
};

Setup setup(const VerifyOptions& opts, int default_os) {
  if (opts.L < 0) throw BadParam("band limit must be >= 0");
  if (opts.n < 1) throw BadParam("sample count must be >= 1");
  Setup s;
  s.space = make_space(opts.space);
  s.oversample = opts.oversample.value_or(default_os);
  s.quad = s.space->quadrature(opts.L, s.oversample);
  return s;
}

VerificationReport start_report(const std::string& id, const VerifyOptions& opts, const Setup& s,
                                double default_tol) {
  VerificationReport r;
  r.inequality = id;
  r.space = s.space->spec();
  r.pair = opts.pair;
  r.L = opts.L;
  r.n = opts.n;
  r.seed = opts.seed;
  r.oversample = s.oversample;
  r.tol = opts.tol.value_or(default_tol);
  return r;
}

void finish(VerificationReport& r) {
  r.max_margin = -std::numeric_limits<double>::infinity();
  r.max_ratio = 0.0;
  bool finite = true;
  for (const auto& s : r.samples) {
    if (!std::isfinite(s.margin)) finite = false;
    r.max_margin = std::max(r.max_margin, s.margin);
    r.max_ratio = std::max(r.max_ratio, s.ratio);
  }
  r.verdict = finite && r.max_margin <= r.tol;
  if (r.refinement.computed) r.verdict = r.verdict && r.refinement.margin <= r.tol;
}

std::size_t worst_index(const VerificationReport& r) {
  std::size_t w = 0;
  for (std::size_t i = 1; i < r.samples.size(); ++i)
    if (r.samples[i].margin > r.samples[w].margin) w = i;
  return w;
}

double rel_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

SampledFunction sgn_times(const SampledFunction& f, const std::vector<double>& mag) {
  SampledFunction g = f;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double a = std::abs(f.values[i]);
    // sgn(0) = 0
    g.values[i] = a == 0.0 ? cplx(0.0) : f.values[i] / a * mag[i];
  }
  return g;
}

}  // namespace

ComplementaryPair pair_from_spec(const std::string& spec) { return normalize_pair(builtin_young(spec)); }

SampledFunction random_unit_function(std::shared_ptr<const HomogeneousSpace> space,
                                     std::shared_ptr<const Quadrature> q, int L,
                                     std::uint64_t seed, const std::string& profile) {
  auto sigma = random_bandlimited(space, L, seed, profile);
  const double n2 = plancherel_sq(sigma);
  if (n2 > 0.0) sigma = sigma.scaled(1.0 / std::sqrt(n2));
  auto f = synthesize(sigma, std::move(q));
  f.seed = seed;
  f.band_hint = L;
  return f;
}

// ---------------------------------------------------------------------------

VerificationReport verify_hy_lp(const VerifyOptions& opts) {
  const double p = opts.p;
  if (!(p >= 1.0 && p <= 2.0)) throw BadExponent("hy-lp needs 1 <= p <= 2");
  const double q = p == 1.0 ? kInfExponent : p / (p - 1.0);
  const Setup s = setup(opts, 4);
  auto r = start_report("hy-lp", opts, s, p == 2.0 ? 1e-9 : 1e-6);
  r.pair = "";
  auto eval = [&](std::uint64_t seed, std::shared_ptr<const Quadrature> quad) {
    const auto f = random_unit_function(s.space, quad, opts.L, seed, opts.profile);
    SampleRecord rec;
    rec.seed = seed;
    rec.lhs = dual_lp(analyze(f, opts.L), q);
    rec.rhs = lp_norm(f, p);
    rec.margin = rec.lhs - rec.rhs;
    rec.ratio = rec.lhs / rec.rhs;
    return rec;
  };
  double max_abs = 0.0;
  for (int i = 0; i < opts.n; ++i) {
    r.samples.push_back(eval(derive_seed(opts.seed, static_cast<std::uint64_t>(i)), s.quad));
    max_abs = std::max(max_abs, std::abs(r.samples.back().margin));
  }
  r.metrics["p"] = p;
  r.metrics["q"] = q;
  r.metrics["max_abs_margin"] = max_abs;
  if (opts.refine) {
    const auto& worst = r.samples[worst_index(r)];
    const auto fine = eval(worst.seed, s.space->quadrature(opts.L, 2 * s.oversample));
    r.refinement = {true, 2 * s.oversample,
                    std::max(rel_change(worst.lhs, fine.lhs), rel_change(worst.rhs, fine.rhs)),
                    fine.margin, false};
    r.refinement.ok = r.refinement.delta < kRefineOk;
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

double a_priori_bound(const YoungFunction& psi, const std::vector<RepInfo>& support) {
  const double n = static_cast<double>(support.size());
  const double t = psi(1.0);
  double best = 0.0;
  for (const auto& rep : support) {
    const double kd = static_cast<double>(rep.k) * rep.d;
    best = std::max(best, std::sqrt(kd) / young_inverse(psi, t / (n * kd)));
  }
  return best;
}

GrowthFit growth_fit(const YoungFunction& psi, const GrowthFitOptions& opts) {
  if (!psi.deriv) throw NoFit("growth fit needs the derivative of " + psi.label);
  const auto t = log_grid(opts.t_min, opts.t_max, opts.points);
  std::vector<double> d(t.size());
  bool finite = true;
  for (std::size_t i = 0; i < t.size(); ++i) {
    try {
      d[i] = psi.deriv(t[i]);
    } catch (const BracketOverflow&) {
      d[i] = std::numeric_limits<double>::infinity();
    }
    finite = finite && std::isfinite(d[i]);
  }
  if (!finite) throw NoFit(psi.label + " has a non-finite derivative on the scan range");
  const std::size_t k = std::max<std::size_t>(4, t.size() / 10);
  for (double p = 1.0; p <= opts.p_max + 1e-12; p += opts.p_step) {
    std::vector<double> lt, lr;
    double c0 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double ratio = d[i] / std::pow(t[i], p);
      c0 = std::max(c0, ratio);
      if (ratio > 0.0) {
        lt.push_back(std::log(t[i]));
        lr.push_back(std::log(ratio));
      }
    }
    if (!std::isfinite(c0)) continue;
    bool bounded = true;
    if (lt.size() > k) {
      const std::size_t e = lt.size() - 1;
      const double right = (lr[e] - lr[e - k]) / (lt[e] - lt[e - k]);
      const double left = (lr[k] - lr[0]) / (lt[k] - lt[0]);
      bounded = right <= opts.slope_tol && left >= -opts.slope_tol;
    }
    if (bounded) return GrowthFit{c0, std::round(p * 1e6) / 1e6, opts.t_min, opts.t_max};
  }
  throw NoFit("no p <= p_max bounds the derivative of " + psi.label);
}

VerificationReport verify_hy_orlicz(const VerifyOptions& opts) {
  const Setup s = setup(opts, 4);
  const auto pair = pair_from_spec(opts.pair);
  const auto w = check_order(pair.phi, quadratic_young());
  if (!w) throw HypothesisFailed("no ordering witness for " + opts.pair + " against t^2/2");
  GrowthFit fit;
  try {
    fit = growth_fit(pair.psi);
  } catch (const NoFit& e) {
    throw HypothesisFailed(std::string("growth bound on the conjugate fails: ") + e.what());
  }
  auto r = start_report("hy-orlicz", opts, s, 1e-6);

  auto run = [&](int L, std::shared_ptr<const Quadrature> quad, std::vector<SampleRecord>& out,
                 double& eq12) {
    const auto reps = s.space->reps(L);
    const double bound = a_priori_bound(pair.psi, reps);
    eq12 = 0.0;
    auto one = [&](const SampledFunction& f, std::uint64_t seed) {
      const auto sigma = analyze(f, L);
      const auto prof = profile(sigma);
      const double nphi = luxemburg(pair.phi, f).value;
      SampleRecord rec;
      rec.seed = seed;
      rec.lhs = dual_orlicz(pair.psi, prof).value;
      rec.rhs = bound * nphi;
      rec.margin = rec.lhs - rec.rhs;
      rec.ratio = rec.lhs / nphi;
      for (std::size_t i = 0; i < prof.size(); ++i)
        eq12 = std::max(eq12, prof.F[i] / (std::sqrt(double(prof.d[i]) * prof.k[i]) * nphi));
      return rec;
    };
    if (opts.include_constant) {
      const auto c = sample(s.space, quad, [](const std::vector<double>&) { return cplx(1.0); });
      out.push_back(one(c, 0));
    }
    for (int i = 0; i < opts.n; ++i) {
      const auto seed = derive_seed(opts.seed, static_cast<std::uint64_t>(i));
      out.push_back(one(random_unit_function(s.space, quad, L, seed, opts.profile), seed));
    }
    return bound;
  };

  double eq12 = 0.0;
  const double bound = run(opts.L, s.quad, r.samples, eq12);
  finish(r);
  r.metrics["a_priori_bound"] = bound;
  r.metrics["eq12_max_ratio"] = eq12;
  r.metrics["r0_hat"] = r.max_ratio;
  r.metrics["order_a"] = w->a;
  r.metrics["order_b"] = w->b;
  r.metrics["order_c"] = w->c;
  r.metrics["order_d"] = w->d;
  r.metrics["order_x0"] = w->x0;
  r.metrics["order_x1"] = w->x1;
  r.metrics["growth_c0"] = fit.c0;
  r.metrics["growth_p"] = fit.p;
  r.metrics["growth_t_min"] = fit.t_min;
  r.metrics["growth_t_max"] = fit.t_max;
  r.notes["r0_hat"] = "empirical lower bound for the best constant, not a certificate";
  if (opts.include_constant) r.notes["sample_0"] = "f = 1 probe";

  if (opts.refine) {
    const std::size_t wi = worst_index(r);
    const int os2 = 2 * s.oversample;
    const auto fq = s.space->quadrature(opts.L, os2);
    const auto& worst = r.samples[wi];
    SampledFunction f = (opts.include_constant && wi == 0)
                            ? sample(s.space, fq, [](const std::vector<double>&) { return cplx(1.0); })
                            : random_unit_function(s.space, fq, opts.L, worst.seed, opts.profile);
    const double nphi = luxemburg(pair.phi, f).value;
    const double lhs = dual_orlicz(pair.psi, profile(analyze(f, opts.L))).value;
    r.refinement = {true, os2, std::max(rel_change(worst.lhs, lhs), rel_change(worst.ratio, lhs / nphi)),
                    lhs - bound * nphi, false};
    r.refinement.ok = r.refinement.delta < kRefineOk;
    finish(r);
  }
  if (opts.stability) {
    std::vector<SampleRecord> twice;
    double eq12b = 0.0;
    run(2 * opts.L, s.space->quadrature(2 * opts.L, s.oversample), twice, eq12b);
    double m2 = 0.0;
    for (const auto& rec : twice) m2 = std::max(m2, rec.ratio);
    r.metrics["r0_hat_2L"] = m2;
    r.metrics["stability_rel_change"] = std::abs(m2 - r.max_ratio) / r.max_ratio;
  }
  return r;
}

// ---------------------------------------------------------------------------

VerificationReport verify_hoelder(const VerifyOptions& opts) {
  const Setup s = setup(opts, 4);
  const auto pair = pair_from_spec(opts.pair);
  if (!pair.normalized) throw HypothesisFailed(opts.pair + " does not give a normalized pair");
  auto r = start_report("hoelder", opts, s, 1e-6);
  const auto& wts = s.quad->weights;
  double gap_max = 0.0, dev_max = 0.0;
  for (int i = 0; i < opts.n; ++i) {
    const auto seed = derive_seed(opts.seed, static_cast<std::uint64_t>(i));
    const auto f = random_unit_function(s.space, s.quad, opts.L, seed, opts.profile);
    const auto g = random_unit_function(s.space, s.quad, opts.L, derive_seed(seed, 1), opts.profile);
    cplx integral = 0.0;
    for (std::size_t x = 0; x < wts.size(); ++x) integral += wts[x] * f.values[x] * g.values[x];
    SampleRecord rec;
    rec.seed = seed;
    rec.lhs = std::abs(integral);
    rec.rhs = luxemburg(pair.phi, f).value * luxemburg(pair.psi, g).value;
    rec.margin = rec.lhs - rec.rhs;
    rec.ratio = rec.lhs / rec.rhs;
    r.samples.push_back(rec);

    // g* = Psi'(|f| / N_Psi(f)) sgn(f) turns the inequality into an equality
    // exactly when N_Phi(g*) = 1.
    const double npsi = luxemburg(pair.psi, f).value;
    std::vector<double> mag(f.values.size());
    for (std::size_t x = 0; x < mag.size(); ++x) mag[x] = pair.psi.deriv(std::abs(f.values[x]) / npsi);
    const auto gstar = sgn_times(f, mag);
    const double nphi_g = luxemburg(pair.phi, gstar).value;
    double fg = 0.0;
    for (std::size_t x = 0; x < wts.size(); ++x) fg += wts[x] * std::abs(f.values[x]) * mag[x];
    gap_max = std::max(gap_max, std::abs(fg - nphi_g * npsi));
    dev_max = std::max(dev_max, std::abs(nphi_g - 1.0));
  }
  r.metrics["extremal_gap_max"] = gap_max;
  r.metrics["extremal_norm_dev_max"] = dev_max;
  r.metrics["extremal_ok"] = (gap_max <= 1e-6 && dev_max <= 1e-6) ? 1.0 : 0.0;
  r.metrics["phi_at_1"] = pair.phi(1.0);
  r.metrics["psi_at_1"] = pair.psi(1.0);
  r.metrics["scale"] = pair.scale;
  if (opts.refine) {
    const auto& worst = r.samples[worst_index(r)];
    const auto fq = s.space->quadrature(opts.L, 2 * s.oversample);
    const auto f = random_unit_function(s.space, fq, opts.L, worst.seed, opts.profile);
    const auto g = random_unit_function(s.space, fq, opts.L, derive_seed(worst.seed, 1), opts.profile);
    cplx integral = 0.0;
    for (std::size_t x = 0; x < fq->size(); ++x) integral += fq->weights[x] * f.values[x] * g.values[x];
    const double rhs = luxemburg(pair.phi, f).value * luxemburg(pair.psi, g).value;
    r.refinement = {true, 2 * s.oversample,
                    std::max(rel_change(worst.lhs, std::abs(integral)), rel_change(worst.rhs, rhs)),
                    std::abs(integral) - rhs, false};
    r.refinement.ok = r.refinement.delta < kRefineOk;
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

VerificationReport verify_embeddings(const VerifyOptions& opts) {
  const Setup s = setup(opts, 1);
  auto r = start_report("embeddings", opts, s, 1e-12);
  r.pair = "";
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(1.0 + 0.2 * i);
  grid.push_back(kInfExponent);
  for (int i = 0; i < opts.n; ++i) {
    const auto seed = derive_seed(opts.seed, static_cast<std::uint64_t>(i));
    auto sigma = random_bandlimited(s.space, opts.L, seed, opts.profile);
    sigma = sigma.scaled(1.0 / std::sqrt(plancherel_sq(sigma)));
    std::vector<double> lp, sch;
    for (double p : grid) {
      lp.push_back(dual_lp(sigma, p));
      sch.push_back(dual_schatten(sigma, p));
    }
    SampleRecord rec;
    rec.seed = seed;
    rec.margin = -std::numeric_limits<double>::infinity();
    auto consider = [&](double lhs, double rhs) {
      const double m = (lhs - rhs) / rhs;
      if (m > rec.margin) {
        rec.margin = m;
        rec.lhs = lhs;
        rec.rhs = rhs;
        rec.ratio = lhs / rhs;
      }
    };
    for (std::size_t a = 0; a < grid.size(); ++a) {
      for (std::size_t b = a + 1; b < grid.size(); ++b) consider(lp[b], lp[a]);
      if (grid[a] <= 2.0) consider(sch[a], lp[a]);
      if (grid[a] >= 2.0) consider(lp[a], sch[a]);
    }
    r.samples.push_back(rec);
  }
  r.notes["margin"] = "relative: (lhs - rhs) / rhs for the worst comparison of the sample";
  finish(r);
  return r;
}

VerificationReport verify_parseval(const VerifyOptions& opts) {
  const Setup s = setup(opts, 1);
  auto r = start_report("parseval", opts, s, 1e-9);
  r.pair = "";
  for (int i = 0; i < opts.n; ++i) {
    const auto seed = derive_seed(opts.seed, static_cast<std::uint64_t>(i));
    const auto f = random_unit_function(s.space, s.quad, opts.L, seed, opts.profile);
    SampleRecord rec;
    rec.seed = seed;
    rec.lhs = l2_sq(f);
    rec.rhs = plancherel_sq(analyze(f, opts.L));
    rec.margin = std::abs(rec.lhs - rec.rhs) / rec.rhs;
    rec.ratio = rec.lhs / rec.rhs;
    r.samples.push_back(rec);
  }
  r.notes["margin"] = "relative: |lhs - rhs| / rhs";
  finish(r);
  return r;
}

VerificationReport run_verification(const std::string& inequality, const VerifyOptions& opts) {
  if (inequality == "hy-lp") return verify_hy_lp(opts);
  if (inequality == "hy-orlicz") return verify_hy_orlicz(opts);
  if (inequality == "hoelder") return verify_hoelder(opts);
  if (inequality == "embeddings") return verify_embeddings(opts);
  if (inequality == "parseval") return verify_parseval(opts);
  throw ParseError("unknown inequality '" + inequality + "'");
}

}  // namespace orlicz
