#include "orlicz/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"
#include "space_impl.hpp"

namespace orlicz {

namespace {

int max_abs(const std::vector<int>& v) {
  int m = 0;
  for (int x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

bool operator<(const RepLabel& a, const RepLabel& b) {
  const int ba = max_abs(a.v);
  const int bb = max_abs(b.v);
  if (ba != bb) return ba < bb;
  return a.v < b.v;
}

std::vector<double> Quadrature::node(std::size_t i) const {
  std::vector<std::size_t> idx(axes.size());
  for (std::size_t a = axes.size(); a-- > 0;) {
    const std::size_t n = axes[a].size();
    idx[a] = i % n;
    i /= n;
  }
  std::vector<double> out(coord_order.size());
  for (std::size_t c = 0; c < coord_order.size(); ++c) {
    const auto a = static_cast<std::size_t>(coord_order[c]);
    out[c] = axes[a][idx[a]];
  }
  return out;
}

SpectralCoefficients::SpectralCoefficients(std::shared_ptr<const HomogeneousSpace> space, int band)
    : space_(std::move(space)), band_(band) {}

void SpectralCoefficients::set(const RepInfo& info, Eigen::MatrixXcd block) {
  if (block.rows() != info.d || block.cols() != info.d)
    throw BadParam("block shape does not match d_pi");
  for (int r = info.k; r < info.d; ++r)
    if (block.row(r).squaredNorm() != 0.0)
      throw BadParam("rows beyond k_pi must vanish in Sigma(G/K)");
  blocks_[info.label] = Block{info, std::move(block)};
}

Eigen::MatrixXcd& SpectralCoefficients::at(const RepInfo& info) {
  auto it = blocks_.find(info.label);
  if (it == blocks_.end())
    it = blocks_.emplace(info.label, Block{info, Eigen::MatrixXcd::Zero(info.d, info.d)}).first;
  return it->second.m;
}

const SpectralCoefficients::Block* SpectralCoefficients::find(const RepLabel& label) const {
  auto it = blocks_.find(label);
  return it == blocks_.end() ? nullptr : &it->second;
}

SpectralCoefficients SpectralCoefficients::scaled(cplx c) const {
  SpectralCoefficients out = *this;
  for (auto& [label, blk] : out.blocks_) blk.m *= c;
  return out;
}

SpectralCoefficients SpectralCoefficients::restricted(std::span<const RepLabel> support) const {
  SpectralCoefficients out(space_, band_);
  for (const auto& label : support)
    if (const Block* b = find(label)) out.blocks_[label] = *b;
  return out;
}

std::vector<RepLabel> SpectralCoefficients::support() const {
  std::vector<RepLabel> out;
  out.reserve(blocks_.size());
  for (const auto& [label, blk] : blocks_) out.push_back(label);
  return out;
}

Eigen::MatrixXcd HomogeneousSpace::rep_matrix(const RepInfo& rep,
                                              std::span<const double> node) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rep.d, rep.d);
  for (int i = 0; i < rep.d; ++i)
    for (int j = 0; j < rep.k; ++j) m(i, j) = coeff(rep, i, j, node);
  return m;
}

std::shared_ptr<const HomogeneousSpace> make_space(const std::string& spec) {
  if (spec == "sphere2") return std::make_shared<const detail::Sphere2>();
  if (spec == "su2") return std::make_shared<const detail::SU2>();
  if (spec.rfind("torus:", 0) == 0) {
    int dim = 0;
    try {
      std::size_t pos = 0;
      dim = std::stoi(spec.substr(6), &pos);
      if (pos != spec.size() - 6) dim = 0;
    } catch (const std::exception&) {
      dim = 0;
    }
    if (dim < 1) throw ParseError("bad torus dimension in '" + spec + "'");
    return std::make_shared<const detail::Torus>(dim);
  }
  throw ParseError("unknown space '" + spec + "'");
}

std::vector<std::string> builtin_space_specs() { return {"sphere2", "su2", "torus:1", "torus:2"}; }

SpectralCoefficients analyze(const SampledFunction& f, int L) {
  if (!f.space || !f.quad) throw BadParam("sampled function without space or quadrature");
  if (f.values.size() != f.quad->size()) throw BadParam("value count differs from node count");
  if (L < 0) throw BadParam("band limit must be >= 0");
  if (L > f.quad->band)
    throw BandLimitExceeded("band " + std::to_string(L) + " exceeds quadrature exactness band " +
                            std::to_string(f.quad->band));
  SpectralCoefficients out(f.space, L);
  for (const auto& r : f.space->reps(L)) out.at(r);
  f.space->analyze_into(f.values, *f.quad, L, out);
  return out;
}

SampledFunction synthesize(const SpectralCoefficients& sigma, std::shared_ptr<const Quadrature> q) {
  if (!sigma.space()) throw BadParam("coefficients without a space");
  for (const auto& [label, blk] : sigma.blocks())
    if (sigma.space()->band_of(label) > q->band)
      throw BandLimitExceeded("support exceeds quadrature band");
  SampledFunction f{sigma.space(), q, sigma.space()->synthesize_values(sigma, *q), sigma.band(), 0};
  return f;
}

SpectralCoefficients random_bandlimited(std::shared_ptr<const HomogeneousSpace> space, int L,
                                        std::uint64_t seed, const std::string& profile) {
  if (L < 0) throw BadParam("band limit must be >= 0");
  double decay = 0.0;
  if (profile.rfind("decay:", 0) == 0) {
    try {
      decay = std::stod(profile.substr(6));
    } catch (const std::exception&) {
      throw ParseError("bad decay profile '" + profile + "'");
    }
  } else if (profile != "flat") {
    throw ParseError("unknown spectral profile '" + profile + "'");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralCoefficients sigma(space, L);
  for (const auto& r : space->reps(L)) {
    const double scale = std::pow(1.0 + space->band_of(r.label), -decay) / std::sqrt(2.0);
    Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(r.d, r.d);
    for (int j = 0; j < r.k; ++j)
      for (int i = 0; i < r.d; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        blk(j, i) = cplx(re, im) * scale;
      }
    sigma.set(r, std::move(blk));
  }
  return sigma;
}

double hs_norm(const Eigen::MatrixXcd& m) { return m.norm(); }

double plancherel_sq(const SpectralCoefficients& sigma) {
  double s = 0.0;
  for (const auto& [label, blk] : sigma.blocks()) s += blk.info.d * blk.m.squaredNorm();
  return s;
}

double l2_sq(const SampledFunction& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.quad->weights[i] * std::norm(f.values[i]);
  return s;
}

std::vector<std::vector<double>> wigner_small_d(int twice_max, double beta) {
  // d^j from d^{j-1/2} (x) d^{1/2} through the stretched Clebsch-Gordan
  // coupling |j m> = sum_a C(j,m,a) |j-1/2, m-a> |1/2, a>.
  std::vector<std::vector<double>> out(static_cast<std::size_t>(twice_max + 1));
  out[0] = {1.0};
  if (twice_max == 0) return out;
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  // half[(a) * 2 + (b)], index 0 <-> -1/2, 1 <-> +1/2
  const double half[4] = {c, s, -s, c};
  out[1] = {half[0], half[1], half[2], half[3]};
  for (int tj = 2; tj <= twice_max; ++tj) {
    const int n = tj + 1;
    const int np = tj;  // dimension of j - 1/2
    const auto& prev = out[static_cast<std::size_t>(tj - 1)];
    std::vector<double> cur(static_cast<std::size_t>(n * n), 0.0);
    // twice-m of row r is 2r - tj
    auto coef = [tj](int tm, int a) {  // a: 1 -> +1/2, 0 -> -1/2
      const double num = a == 1 ? 0.5 * (tj + tm) : 0.5 * (tj - tm);
      return std::sqrt(num / tj);
    };
    for (int r = 0; r < n; ++r) {
      const int tm = 2 * r - tj;
      for (int col = 0; col < n; ++col) {
        const int tmp = 2 * col - tj;
        double acc = 0.0;
        for (int a = 0; a < 2; ++a) {
          const double ca = coef(tm, a);
          if (ca == 0.0) continue;
          const int pr = r - a;  // row of m - a in the j-1/2 matrix
          if (pr < 0 || pr >= np) continue;
          for (int b = 0; b < 2; ++b) {
            const double cb = coef(tmp, b);
            if (cb == 0.0) continue;
            const int pc = col - b;
            if (pc < 0 || pc >= np) continue;
            acc += ca * cb * prev[static_cast<std::size_t>(pr * np + pc)] * half[a * 2 + b];
          }
        }
        cur[static_cast<std::size_t>(r * n + col)] = acc;
      }
    }
    out[static_cast<std::size_t>(tj)] = std::move(cur);
  }
  return out;
}

}  // namespace orlicz

namespace orlicz::detail {

std::vector<double> tensor_weights(const std::vector<std::vector<double>>& axis_weights) {
  std::vector<double> w{1.0};
  for (const auto& aw : axis_weights) {
    std::vector<double> next;
    next.reserve(w.size() * aw.size());
    for (double a : w)
      for (double b : aw) next.push_back(a * b);
    w = std::move(next);
  }
  return w;
}

void uniform_axis(int n, double period, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(static_cast<std::size_t>(n));
  weights.assign(static_cast<std::size_t>(n), 1.0 / n);
  for (int k = 0; k < n; ++k) nodes[static_cast<std::size_t>(k)] = period * k / n;
}

void check_quadrature_args(int L, int oversample) {
  if (L < 0) throw BadParam("band limit must be >= 0");
  if (oversample < 1) throw BadParam("oversample must be >= 1");
}

}  // namespace orlicz::detail

namespace orlicz::detail {

void fill_wigner(Quadrature& q, int twice_max, const std::vector<double>& angles) {
  q.wigner.assign(static_cast<std::size_t>(twice_max + 1), {});
  for (int tj = 0; tj <= twice_max; ++tj)
    q.wigner[static_cast<std::size_t>(tj)].reserve(angles.size() * (tj + 1) * (tj + 1));
  for (double beta : angles) {
    auto d = wigner_small_d(twice_max, beta);
    for (int tj = 0; tj <= twice_max; ++tj) {
      auto& dst = q.wigner[static_cast<std::size_t>(tj)];
      const auto& src = d[static_cast<std::size_t>(tj)];
      dst.insert(dst.end(), src.begin(), src.end());
    }
  }
}

void polar_axis(int n, std::vector<double>& angles, std::vector<double>& weights) {
  const GaussLegendre gl = gauss_legendre(n);
  angles.resize(gl.nodes.size());
  weights.resize(gl.nodes.size());
  for (std::size_t b = 0; b < gl.nodes.size(); ++b) {
    angles[b] = std::acos(gl.nodes[b]);
    weights[b] = 0.5 * gl.weights[b];
  }
}

}  // namespace orlicz::detail
