#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"
#include "orlicz/verify.hpp"

namespace orlicz {

namespace {

struct Coord {
  std::size_t rep;
  int row;
  int col;
  bool imag;
};

bool is_trivial(const HomogeneousSpace& space, const RepInfo& rep) {
  return space.band_of(rep.label) == 0 &&
         std::all_of(rep.label.v.begin(), rep.label.v.end(), [](int v) { return v == 0; });
}

}  // namespace

std::vector<RepInfo> parse_support(const HomogeneousSpace& space, const std::string& spec) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(s, &pos);
      if (pos == s.size() && v >= 0) return v;
    } catch (const std::logic_error&) {
    }
    throw ParseError("bad support spec '" + spec + "'");
  };
  if (spec.rfind("first:", 0) == 0) {
    const int n = number(spec.substr(6));
    if (n < 1) throw ParseError("support needs at least one rep");
    for (int L = 0;; ++L) {
      auto reps = space.reps(L);
      if (static_cast<int>(reps.size()) >= n) {
        reps.resize(static_cast<std::size_t>(n));
        return reps;
      }
      if (L > 4096) throw ParseError("support too large");
    }
  }
  if (spec.rfind("band:", 0) == 0) return space.reps(number(spec.substr(5)));
  std::vector<RepInfo> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto info = space.info(space.parse_rep(item));
    if (std::none_of(out.begin(), out.end(), [&](const RepInfo& r) { return r.label == info.label; }))
      out.push_back(info);
  }
  if (out.empty()) throw ParseError("empty support '" + spec + "'");
  std::sort(out.begin(), out.end(), [](const RepInfo& a, const RepInfo& b) { return a.label < b.label; });
  return out;
}

double hy_ratio(const ComplementaryPair& pair, const SpectralCoefficients& sigma,
                std::shared_ptr<const Quadrature> q) {
  const auto f = synthesize(sigma, std::move(q));
  const double nphi = luxemburg(pair.phi, f).value;
  if (nphi == 0.0) return 0.0;
  // analyze(synthesize(sigma)) = sigma on a band-exact quadrature, so the
  // profile is read off the coefficients directly.
  return dual_orlicz(pair.psi, profile(sigma)).value / nphi;
}

RatioSearchResult ratio_search(const std::string& space_spec, const std::string& pair_spec,
                               const std::string& lambda, const RatioSearchOptions& opts) {
  if (opts.restarts < 1 || opts.max_sweeps < 1) throw BadParam("restarts and sweeps must be >= 1");
  const auto space = make_space(space_spec);
  const auto pair = pair_from_spec(pair_spec);
  const auto support = parse_support(*space, lambda);
  int L = 0;
  for (const auto& r : support) L = std::max(L, space->band_of(r.label));
  const auto q = space->quadrature(L, opts.oversample);

  std::vector<Coord> coords;
  for (std::size_t s = 0; s < support.size(); ++s)
    for (int j = 0; j < support[s].k; ++j)
      for (int i = 0; i < support[s].d; ++i) {
        coords.push_back({s, j, i, false});
        coords.push_back({s, j, i, true});
      }

  RatioSearchResult res;
  res.space = space->spec();
  res.pair = pair_spec;
  for (const auto& r : support) res.lambda.push_back(r.label);
  res.bound = a_priori_bound(pair.psi, support);

  auto build = [&](const std::vector<double>& x) {
    SpectralCoefficients sigma(space, L);
    for (const auto& r : support) sigma.at(r);
    for (std::size_t c = 0; c < coords.size(); ++c) {
      const auto& co = coords[c];
      cplx& e = sigma.at(support[co.rep])(co.row, co.col);
      e += co.imag ? cplx(0.0, x[c]) : cplx(x[c], 0.0);
    }
    return sigma;
  };
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return hy_ratio(pair, build(x), q);
  };
  auto normalize = [](std::vector<double>& x) {
    double n = 0.0;
    for (double v : x) n += v * v;
    n = std::sqrt(n);
    if (n > 0.0)
      for (double& v : x) v /= n;
  };

  for (const auto& r : support)
    if (is_trivial(*space, r)) {
      std::vector<double> x(coords.size(), 0.0);
      for (std::size_t c = 0; c < coords.size(); ++c)
        if (support[coords[c].rep].label == r.label && !coords[c].imag) x[c] = 1.0;
      res.constant_ratio = eval(x);
    }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> best_x;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::vector<double> x(coords.size());
    for (double& v : x) v = normal(rng);
    normalize(x);
    double cur = eval(x);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      ++res.sweeps;
      const double start = cur;
      for (std::size_t c = 0; c < coords.size(); ++c) {
        const double x0 = x[c];
        auto line = [&](double t) {
          x[c] = x0 + t;
          return eval(x);
        };
        const auto g = golden_section_max(line, -1.0, 1.0, opts.line_tol, 200);
        if (g.value > cur) {
          x[c] = x0 + g.x;
          normalize(x);
          cur = eval(x);
        } else {
          x[c] = x0;
        }
      }
      if (cur - start <= opts.stop_rel * std::abs(cur)) break;
    }
    res.restart_best.push_back(cur);
    ++res.restarts;
    if (best_x.empty() || cur > res.best_ratio) {
      res.best_ratio = cur;
      best_x = x;
    }
  }
  res.best = build(best_x);
  res.reevaluated = hy_ratio(pair, res.best, q);
  return res;
}

}  // namespace orlicz
