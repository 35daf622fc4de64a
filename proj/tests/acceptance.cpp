// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--known-failures=ID,ID...]
//
// Exit status is 0 when every failing line is listed as known, 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "orlicz/cli.hpp"
#include "orlicz/io.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/verify.hpp"

using namespace orlicz;

namespace {

const std::vector<std::string> kSpaces = {"torus:1", "sphere2", "su2"};

std::set<std::string> known;
std::vector<std::string> unexpected;

void line(const std::string& id, bool pass, const std::string& detail) {
  const bool is_known = !pass && known.count(id) > 0;
  std::printf("criterion %-3s %s  %s\n", id.c_str(), pass ? "PASS" : (is_known ? "FAIL (known)" : "FAIL"),
              detail.c_str());
  std::fflush(stdout);
  if (!pass && !is_known) unexpected.push_back(id);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

VerifyOptions base(const std::string& space, int L, int n, std::uint64_t seed) {
  VerifyOptions o;
  o.space = space;
  o.L = L;
  o.n = n;
  o.seed = seed;
  return o;
}

void parseval() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool ok = true;
  for (const auto& sp : kSpaces) {
    auto o = base(sp, 16, 200, 101);
    o.tol = 1e-9;
    const auto r = verify_parseval(o);
    ok = ok && r.verdict;
    worst = std::max(worst, r.max_margin);
  }
  const double t = seconds_since(t0);
  line("1", ok && worst <= 1e-9 && t <= 60.0,
       fmt("parseval L=16 x200 on T1,S2,SU2: max rel gap %.3g (<= 1e-9), %.1f s (<= 60 s)", worst, t));
}

void hausdorff_young() {
  bool ok = true;
  double worst = -1e300, eq_gap = 0.0;
  for (const auto& sp : kSpaces)
    for (double p : {1.0, 1.2, 1.5, 2.0}) {
      auto o = base(sp, 8, 200, 202);
      o.p = p;
      o.tol = 1e-6;
      const auto r = verify_hy_lp(o);
      ok = ok && r.verdict;
      worst = std::max(worst, r.max_margin);
      if (p == 2.0)
        for (const auto& s : r.samples) eq_gap = std::max(eq_gap, std::abs(s.lhs - s.rhs));
    }
  line("2", ok && eq_gap <= 1e-9,
       fmt("hy-lp p in {1,1.2,1.5,2}, L=8 x200: max margin %.3g (<= 1e-6), p=2 gap %.3g (<= 1e-9)",
           worst, eq_gap));
}

void embeddings() {
  bool ok = true;
  double worst = -1e300;
  for (const auto& sp : kSpaces) {
    auto o = base(sp, 8, 500, 303);
    o.tol = 1e-12;
    const auto r = verify_embeddings(o);
    ok = ok && r.verdict;
    worst = std::max(worst, r.max_margin);
  }
  line("3", ok, fmt("embeddings x500 per space: max relative margin %.3g (<= 1e-12)", worst));
}

void hoelder() {
  for (const auto& [id, pair] : {std::pair{"4a", "power:1.5"}, std::pair{"4b", "riordan:1.5"}}) {
    bool ok = true;
    double margin = -1e300, gap = 0.0, dev = 0.0;
    for (const char* sp : {"torus:1", "sphere2"}) {
      auto o = base(sp, 8, 200, 404);
      o.pair = pair;
      o.tol = 1e-6;
      const auto r = verify_hoelder(o);
      ok = ok && r.verdict;
      margin = std::max(margin, r.max_margin);
      gap = std::max(gap, r.metrics.at("extremal_gap_max"));
      dev = std::max(dev, r.metrics.at("extremal_norm_dev_max"));
    }
    line(id, ok && gap <= 1e-6 && dev <= 1e-6,
         std::string("hoelder ") + pair +
             fmt(" on T1,S2 x200: max margin %.3g (<= 1e-6), extremal gap %.3g (<= 1e-6), |N(g*)-1| %.3g (<= 1e-6)",
                 margin, gap, dev));
  }
}

void orlicz_hy() {
  for (const auto& [id, sp] : {std::pair{"5a", "torus:1"}, std::pair{"5b", "sphere2"}}) {
    auto o = base(sp, 8, 500, 505);
    o.pair = "riordan:1.5";
    const auto r = verify_hy_orlicz(o);
    const double r8 = r.max_ratio;
    const double r16 = r.metrics.at("r0_hat_2L");
    const double change = r.metrics.at("stability_rel_change");
    const bool ok = r.verdict && std::isfinite(r8) && std::isfinite(r16) && r8 >= 1.0 - 1e-9 &&
                    r16 >= 1.0 - 1e-9 && change < 0.05;
    line(id, ok,
         std::string("hy-orlicz riordan:1.5 on ") + sp +
             fmt(" x500: r0_hat(L=8) %.6g, r0_hat(L=16) %.6g (>= 1-1e-9), relative change %.3g (< 0.05)", r8,
                 r16, change));
  }
  double worst = 0.0;
  for (const char* sp : {"torus:1", "sphere2"}) {
    auto o = base(sp, 8, 500, 506);
    o.pair = "power:1.5";
    o.stability = false;
    worst = std::max(worst, verify_hy_orlicz(o).max_ratio);
  }
  line("5c", worst <= 1.0 + 1e-8, fmt("hy-orlicz power:1.5 on T1,S2 x500: max ratio %.12g (<= 1 + 1e-8)", worst));
}

void oracles() {
  // Luxemburg bisection against the dense lambda scan.
  double lux_err = 0.0;
  const std::vector<YoungFunction> gauges = {pair_from_spec("riordan:1.5").phi, power_young(1.5),
                                             cosh_minus_young()};
  const auto t1 = make_space("torus:1");
  const auto q = t1->quadrature(8, 4);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_unit_function(t1, q, 8, derive_seed(606, i));
    std::vector<double> a;
    for (auto v : f.values) a.push_back(std::abs(v));
    const auto& phi = gauges[i % gauges.size()];
    const double ours = luxemburg(phi, f).value;
    const double scan = oracle::dense_scan_gauge(phi, a, q->weights, phi(1.0));
    lux_err = std::max(lux_err, std::abs(ours - scan) / scan);
  }
  // Numeric conjugates against closed forms.
  double conj_err = 0.0;
  const auto cp = conjugate(power_young(1.5));
  const auto ce = conjugate(exp_minus_young());
  for (double y : log_grid(1e-2, 1e2, 64)) {
    const double pw = y * y * y / 3.0;
    const double ex = (1 + y) * std::log1p(y) - y;
    conj_err = std::max(conj_err, std::abs(cp(y) - pw) / std::max(1.0, pw));
    conj_err = std::max(conj_err, std::abs(ce(y) - ex) / std::max(1.0, ex));
  }
  // dual_orlicz with a power gauge equals dual_lp.
  double dual_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& sp = kSpaces[i % kSpaces.size()];
    const auto space = make_space(sp);
    const auto sigma = random_bandlimited(space, 4, derive_seed(607, i));
    const double p = 1.0 + 0.05 * (i % 30);
    // With threshold Phi(1) = 1/p the gauge of x^p/p is the plain l^p norm.
    const double lp = dual_lp(sigma, p);
    const double orl = dual_orlicz(power_young(p), sigma).value;
    dual_err = std::max(dual_err, std::abs(orl - lp) / lp);
  }
  line("6", lux_err <= 1e-7 && conj_err <= 1e-6 && dual_err <= 1e-10,
       fmt("oracles: luxemburg vs scan %.3g (<= 1e-7), conjugate vs closed form %.3g (<= 1e-6), "
           "dual_orlicz vs dual_lp %.3g (<= 1e-10)",
           lux_err, conj_err, dual_err));
}

void a_priori() {
  struct Case {
    const char* space;
    const char* pair;
    const char* support;
  };
  const Case cases[] = {{"torus:1", "riordan:1.5", "first:6"},
                        {"torus:1", "riordan:1.5", "(3);(-5)"},
                        {"torus:2", "riordan:1.5", "first:5"},
                        {"sphere2", "riordan:1.5", "first:3"},
                        {"su2", "riordan:1.5", "first:3"},
                        {"sphere2", "power:1.5", "first:4"},
                        {"torus:1", "quadratic", "first:6"}};
  bool ok = true;
  std::string detail = "ratio_search <= a priori bound:";
  for (const auto& c : cases) {
    RatioSearchOptions ro;
    ro.restarts = 4;
    ro.seed = 707;
    const auto r = ratio_search(c.space, c.pair, c.support, ro);
    ok = ok && r.best_ratio <= r.bound && std::isfinite(r.best_ratio);
    detail += fmt(" %.4g/%.4g", r.best_ratio, r.bound);
  }
  line("7", ok, detail);
}

void determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "orlicz-hy-acceptance";
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "hy-orlicz", "--space", "sphere2", "--pair", "riordan:1.5", "--L", "6", "-n", "50",
       "--seed", "8"},
      {"verify", "hoelder", "--space", "su2", "--pair", "riordan:1.5", "--L", "4", "-n", "30", "--seed", "8",
       "--format", "csv"},
      {"ratio", "--space", "torus:1", "--pair", "riordan:1.5", "--support", "first:4", "--restarts", "2",
       "--seed", "8"},
      {"fit-growth", "--pair", "riordan:1.5"},
      {"list"}};
  bool ok = true;
  int i = 0;
  for (const auto& cmd : commands) {
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      const auto path = (dir / ("run" + std::to_string(i) + "_" + std::to_string(run))).string();
      auto args = cmd;
      args.push_back("--out");
      args.push_back(path);
      const int code = run_cli(args);
      if (code != kExitPass && code != kExitFail) ok = false;
      bytes[run] = read_file(path);
    }
    ok = ok && !bytes[0].empty() && bytes[0] == bytes[1];
    ++i;
  }
  fs::remove_all(dir);
  line("8", ok, fmt("%g CLI commands run twice: reports byte-identical", static_cast<double>(commands.size())));
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    const std::string flag = "--known-failures=";
    if (a.rfind(flag, 0) == 0) {
      std::stringstream ss(a.substr(flag.size()));
      std::string id;
      while (std::getline(ss, id, ',')) known.insert(id);
    } else {
      std::fprintf(stderr, "unknown argument %s\n", a.c_str());
      return 2;
    }
  }
  parseval();
  hausdorff_young();
  embeddings();
  hoelder();
  orlicz_hy();
  oracles();
  a_priori();
  determinism();
  if (!unexpected.empty()) {
    std::printf("unexpected failures:");
    for (const auto& id : unexpected) std::printf(" %s", id.c_str());
    std::printf("\n");
    return 1;
  }
  return 0;
}
