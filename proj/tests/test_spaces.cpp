#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orlicz/error.hpp"
#include "orlicz/spaces.hpp"

using namespace orlicz;

namespace {

double fact(int n) { return std::tgamma(n + 1.0); }

// Closed-form sum for d^j_{m'm}(beta), spin arguments doubled.
double wigner_ref(int tj, int tmp, int tm, double beta) {
  const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
  const int jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
  const int dm = (tmp - tm) / 2;
  const double pre = std::sqrt(fact(jpmp) * fact(jmmp) * fact(jpm) * fact(jmm));
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  double sum = 0.0;
  for (int k = 0; k <= tj; ++k) {
    if (jpm - k < 0 || dm + k < 0 || jmmp - k < 0) continue;
    const double den = fact(jpm - k) * fact(k) * fact(dm + k) * fact(jmmp - k);
    const double sign = ((dm + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign / den * std::pow(c, jpm + jmmp - 2 * k) * std::pow(s, dm + 2 * k);
  }
  return pre * sum;
}

struct Case {
  const char* spec;
  int L;
};

std::vector<Case> round_trip_cases() {
  return {{"torus:1", 16}, {"torus:2", 8}, {"sphere2", 16}, {"su2", 16}, {"sphere2", 0}, {"su2", 1}};
}

double max_block_diff(const SpectralCoefficients& a, const SpectralCoefficients& b) {
  double err = 0.0;
  for (const auto& [label, blk] : a.blocks()) {
    const auto* other = b.find(label);
    REQUIRE(other);
    err = std::max(err, (blk.m - other->m).cwiseAbs().maxCoeff());
  }
  return err;
}

}  // namespace

TEST_CASE("wigner small-d matches the factorial sum") {
  for (double beta : {0.0, 0.3, 1.1, 2.0, std::numbers::pi}) {
    const auto d = wigner_small_d(7, beta);
    for (int tj = 0; tj <= 7; ++tj)
      for (int r = 0; r <= tj; ++r)
        for (int c = 0; c <= tj; ++c) {
          const double got = d[tj][r * (tj + 1) + c];
          CHECK(got == doctest::Approx(wigner_ref(tj, 2 * r - tj, 2 * c - tj, beta)).epsilon(1e-12).scale(1.0));
        }
  }
}

TEST_CASE("wigner small-d is orthogonal at high spin") {
  const auto d = wigner_small_d(40, 0.77);
  const int tj = 40;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> M(d[tj].data(), tj + 1, tj + 1);
  const Eigen::MatrixXd I = M * M.transpose();
  CHECK((I - Eigen::MatrixXd::Identity(tj + 1, tj + 1)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sphere coefficients are scaled spherical harmonics") {
  const auto sp = make_space("sphere2");
  for (int l = 0; l <= 8; ++l) {
    const auto info = sp->info(RepLabel{{l}});
    for (double th : {0.2, 1.0, 2.5})
      for (double ph : {0.0, 0.7, 4.0}) {
        const std::vector<double> node{th, ph};
        for (int m = -l; m <= l; ++m) {
          const int am = std::abs(m);
          cplx Y = std::sph_legendre(l, am, th) * std::polar(1.0, am * ph);
          if (m < 0) Y = (am % 2 ? -1.0 : 1.0) * std::conj(Y);
          const cplx want = std::sqrt(4 * std::numbers::pi / (2 * l + 1)) * Y;
          const cplx got = sp->coeff(info, m + l, 0, node);
          CHECK(std::abs(got - want) < 1e-12);
          CHECK(sp->coeff(info, m + l, 1 % info.d == 0 ? 0 : 1, node) == (info.d > 1 ? cplx(0.0) : got));
        }
      }
  }
}

TEST_CASE("rep enumeration and dimensions") {
  const auto t2 = make_space("torus:2");
  CHECK(t2->reps(2).size() == 25);
  CHECK(t2->reps(2).front().label.v == std::vector<int>{0, 0});
  const auto s2 = make_space("sphere2");
  for (const auto& r : s2->reps(5)) {
    CHECK(r.d == 2 * r.label.v[0] + 1);
    CHECK(r.k == 1);
  }
  const auto su = make_space("su2");
  const auto reps = su->reps(3);
  CHECK(reps.size() == 7);
  for (const auto& r : reps) CHECK(r.d == r.k);
  CHECK(su->rep_name(RepLabel{{3}}) == "l=3/2");
  CHECK(su->parse_rep("l=3/2") == RepLabel{{3}});
  CHECK(su->parse_rep("1.5") == RepLabel{{3}});
  CHECK(su->parse_rep("2") == RepLabel{{4}});
  CHECK(s2->parse_rep("l=4") == RepLabel{{4}});
  CHECK(t2->parse_rep("(1,-2)") == RepLabel{{1, -2}});
  CHECK(t2->rep_name(RepLabel{{1, -2}}) == "(1,-2)");
  CHECK_THROWS_AS(su->parse_rep("1/3"), ParseError);
  CHECK_THROWS_AS(t2->parse_rep("1"), ParseError);
  CHECK_THROWS_AS(make_space("torus:0"), ParseError);
  CHECK_THROWS_AS(make_space("klein"), ParseError);
}

TEST_CASE("quadrature weights are positive with unit mass") {
  for (const auto& spec : builtin_space_specs()) {
    const auto sp = make_space(spec);
    for (int L : {0, 3, 16})
      for (int os : {1, 4}) {
        const auto q = sp->quadrature(L, os);
        // Neumaier summation keeps the check about the weights, not about rounding.
        double s = 0.0, comp = 0.0;
        bool positive = true;
        for (double w : q->weights) {
          positive = positive && w > 0.0;
          const double t = s + w;
          comp += std::abs(s) >= std::abs(w) ? (s - t) + w : (w - t) + s;
          s = t;
        }
        s += comp;
        CHECK(positive);
        CHECK(std::abs(s - 1.0) <= 1e-12);
      }
  }
  CHECK_THROWS_AS(make_space("su2")->quadrature(2, 0), BadParam);
}

TEST_CASE("trace identity at every node up to L = 16") {
  // Phases have unit modulus, so the identity reduces to the small-d tables.
  {
    const auto sp = make_space("su2");
    const auto q = sp->quadrature(16, 1);
    for (int tl = 0; tl <= 32; ++tl) {
      const auto& t = q->wigner[tl];
      const std::size_t n2 = static_cast<std::size_t>((tl + 1) * (tl + 1));
      for (std::size_t b = 0; b < q->axes[0].size(); ++b) {
        double s = 0.0;
        for (std::size_t e = 0; e < n2; ++e) s += t[b * n2 + e] * t[b * n2 + e];
        CHECK(std::abs(s - (tl + 1)) <= 1e-10);
      }
    }
  }
  {
    const auto sp = make_space("sphere2");
    const auto q = sp->quadrature(16, 1);
    for (int l = 0; l <= 16; ++l) {
      const auto& t = q->wigner[2 * l];
      const int n = 2 * l + 1;
      for (std::size_t b = 0; b < q->axes[0].size(); ++b) {
        double s = 0.0;
        for (int r = 0; r < n; ++r) {
          const double v = t[b * n * n + r * n + l];
          s += v * v;
        }
        CHECK(std::abs(s - 1.0) <= 1e-10);
      }
    }
  }
  // Spot check through coeff() at arbitrary points.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& spec : builtin_space_specs()) {
    const auto sp = make_space(spec);
    for (const auto& r : sp->reps(4)) {
      std::vector<double> node{6.28 * u(rng), 3.14 * u(rng), 12.5 * u(rng)};
      if (spec == "sphere2") node = {3.14 * u(rng), 6.28 * u(rng)};
      const auto M = sp->rep_matrix(r, node);
      CHECK(std::abs(M.squaredNorm() - r.k) <= 1e-10);
    }
  }
}

TEST_CASE("schur orthogonality under quadrature") {
  for (const auto& [spec, L] : std::vector<Case>{{"torus:1", 4}, {"torus:2", 2}, {"sphere2", 4}, {"su2", 3}}) {
    CAPTURE(spec);
    const auto sp = make_space(spec);
    const auto q = sp->quadrature(L, 1);
    struct Entry {
      RepInfo r;
      int i, j;
    };
    std::vector<Entry> entries;
    for (const auto& r : sp->reps(L))
      for (int i = 0; i < r.d; ++i)
        for (int j = 0; j < r.k; ++j) entries.push_back({r, i, j});
    Eigen::MatrixXcd V(static_cast<Eigen::Index>(q->size()), static_cast<Eigen::Index>(entries.size()));
    for (std::size_t x = 0; x < q->size(); ++x) {
      const auto node = q->node(x);
      for (std::size_t e = 0; e < entries.size(); ++e)
        V(x, e) = std::sqrt(q->weights[x]) * sp->coeff(entries[e].r, entries[e].i, entries[e].j, node);
    }
    const Eigen::MatrixXcd G = V.adjoint() * V;
    double err = 0.0;
    for (std::size_t a = 0; a < entries.size(); ++a)
      for (std::size_t b = 0; b < entries.size(); ++b) {
        const double want = a == b ? 1.0 / entries[a].r.d : 0.0;
        err = std::max(err, std::abs(G(a, b) - want));
      }
    CHECK(err <= 1e-10);
  }
}

TEST_CASE("analysis of the constant function") {
  for (const auto& spec : builtin_space_specs()) {
    const auto sp = make_space(spec);
    const auto q = sp->quadrature(4, 2);
    const auto f = sample(sp, q, [](const std::vector<double>&) { return cplx(1.0); });
    const auto c = analyze(f, 4);
    for (const auto& [label, blk] : c.blocks()) {
      const bool trivial = sp->band_of(label) == 0 && label.v == std::vector<int>(label.v.size(), 0);
      if (trivial)
        CHECK(std::abs(blk.m(0, 0) - 1.0) < 1e-13);
      else
        CHECK(blk.m.cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("analysis of a single su2 matrix coefficient") {
  const auto sp = make_space("su2");
  const auto q = sp->quadrature(3, 1);
  const auto rep = sp->info(RepLabel{{3}});
  const auto f = sample(sp, q, [&](const std::vector<double>& x) { return sp->coeff(rep, 1, 2, x); });
  const auto c = analyze(f, 3);
  for (const auto& [label, blk] : c.blocks())
    for (int r = 0; r < blk.m.rows(); ++r)
      for (int s = 0; s < blk.m.cols(); ++s) {
        const bool hit = label == rep.label && r == 2 && s == 1;
        CHECK(std::abs(blk.m(r, s) - (hit ? 0.25 : 0.0)) < 1e-12);
      }
}

TEST_CASE("band limit is enforced") {
  const auto sp = make_space("sphere2");
  const auto q = sp->quadrature(3, 4);
  const auto f = sample(sp, q, [](const std::vector<double>&) { return cplx(1.0); });
  CHECK_THROWS_AS(analyze(f, 4), BandLimitExceeded);
  CHECK_NOTHROW(analyze(f, 3));
  auto sigma = random_bandlimited(sp, 5, 1);
  CHECK_THROWS_AS(synthesize(sigma, q), BandLimitExceeded);
}

TEST_CASE("synthesis basics") {
  const auto t1 = make_space("torus:1");
  const auto q = t1->quadrature(3, 1);
  SpectralCoefficients zero(t1, 3);
  for (const cplx v : synthesize(zero, q).values) CHECK(v == cplx(0.0));
  SpectralCoefficients one(t1, 3);
  one.at(t1->info(RepLabel{{1}}))(0, 0) = 1.0;
  const auto f = synthesize(one, q);
  for (std::size_t i = 0; i < q->size(); ++i) CHECK(std::abs(f.values[i] - std::polar(1.0, q->node(i)[0])) < 1e-14);
}

TEST_CASE("zero-row constraint is enforced") {
  const auto sp = make_space("sphere2");
  const auto info = sp->info(RepLabel{{2}});
  SpectralCoefficients c(sp, 2);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
  m(0, 3) = 1.0;
  CHECK_NOTHROW(c.set(info, m));
  m(1, 0) = 1.0;
  CHECK_THROWS_AS(c.set(info, m), BadParam);
  CHECK_THROWS_AS(c.set(info, Eigen::MatrixXcd::Zero(3, 3)), BadParam);
}

TEST_CASE("round trip and parseval up to L = 16") {
  for (const auto& [spec, L] : round_trip_cases()) {
    CAPTURE(spec);
    CAPTURE(L);
    const auto sp = make_space(spec);
    const auto q = sp->quadrature(L, 1);
    const auto sigma = random_bandlimited(sp, L, 42);
    const auto f = synthesize(sigma, q);
    const auto back = analyze(f, L);
    CHECK(max_block_diff(sigma, back) <= 1e-10);
    const double lhs = l2_sq(f);
    const double rhs = plancherel_sq(sigma);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs));
  }
}

TEST_CASE("plancherel on the sphere against direct summation") {
  const auto sp = make_space("sphere2");
  const auto q = sp->quadrature(3, 4);
  SpectralCoefficients sigma(sp, 3);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int l = 0; l <= 3; ++l) {
    const auto info = sp->info(RepLabel{{l}});
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(info.d, info.d);
    for (int i = 0; i < info.d; ++i) m(0, i) = cplx(n(rng), n(rng));
    sigma.set(info, m);
  }
  double direct = 0.0;
  for (std::size_t x = 0; x < q->size(); ++x) {
    const auto node = q->node(x);
    cplx v = 0.0;
    for (const auto& [label, blk] : sigma.blocks()) v += double(blk.info.d) * (blk.m * sp->rep_matrix(blk.info, node)).trace();
    direct += q->weights[x] * std::norm(v);
  }
  CHECK(std::abs(direct - plancherel_sq(sigma)) <= 1e-10 * plancherel_sq(sigma));
  const auto f = synthesize(sigma, q);
  CHECK(std::abs(l2_sq(f) - direct) <= 1e-10 * direct);
}

TEST_CASE("random_bandlimited") {
  const auto sp = make_space("su2");
  const auto a = random_bandlimited(sp, 2, 17);
  const auto b = random_bandlimited(sp, 2, 17);
  CHECK(max_block_diff(a, b) == 0.0);
  const auto c0 = random_bandlimited(sp, 0, 5);
  CHECK(c0.blocks().size() == 1);
  const auto s2 = make_space("sphere2");
  const auto q = s2->quadrature(0, 1);
  const auto f = synthesize(random_bandlimited(s2, 0, 5), q);
  for (const cplx v : f.values) CHECK(std::abs(v - f.values[0]) < 1e-14);
  CHECK_THROWS_AS(random_bandlimited(sp, 2, 1, "bogus"), ParseError);
}

TEST_CASE("decay profile shrinks higher degrees") {
  const auto sp = make_space("sphere2");
  std::vector<double> mean(9, 0.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_bandlimited(sp, 8, seed, "decay:2");
    for (const auto& [label, blk] : c.blocks()) mean[label.v[0]] += hs_norm(blk.m) / 100;
  }
  int drops = 0;
  for (int l = 1; l <= 8; ++l) drops += mean[l] < mean[l - 1];
  CHECK(drops == 8);
}
