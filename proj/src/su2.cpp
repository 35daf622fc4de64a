#include <cmath>
#include <numbers>

#include "orlicz/error.hpp"
#include "space_impl.hpp"

namespace orlicz::detail {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

std::vector<RepInfo> SU2::reps(int L) const {
  std::vector<RepInfo> out;
  for (int tl = 0; tl <= 2 * L; ++tl) out.push_back(RepInfo{RepLabel{{tl}}, tl + 1, tl + 1});
  return out;
}

RepInfo SU2::info(const RepLabel& label) const {
  if (label.v.size() != 1 || label.v[0] < 0) throw BadParam("su2 label must be 2l >= 0");
  return RepInfo{label, label.v[0] + 1, label.v[0] + 1};
}

int SU2::band_of(const RepLabel& label) const { return (label.v.at(0) + 1) / 2; }

cplx SU2::coeff(const RepInfo& rep, int i, int j, std::span<const double> node) const {
  const int tl = rep.label.v[0];
  const auto d = wigner_small_d(tl, node[1]);
  const double dij = d[static_cast<std::size_t>(tl)][static_cast<std::size_t>(i * (tl + 1) + j)];
  const double mi = 0.5 * (2 * i - tl);
  const double mj = 0.5 * (2 * j - tl);
  return std::polar(dij, -mi * node[0] - mj * node[2]);
}

std::shared_ptr<const Quadrature> SU2::quadrature(int L, int oversample) const {
  check_quadrature_args(L, oversample);
  auto q = std::make_shared<Quadrature>();
  q->band = L;
  q->oversample = oversample;
  q->axes.resize(3);
  q->axis_weights.resize(3);
  polar_axis(oversample * (L + 1), q->axes[0], q->axis_weights[0]);
  uniform_axis(2 * oversample * L + 1, 2 * std::numbers::pi, q->axes[1], q->axis_weights[1]);
  uniform_axis(4 * oversample * L + 1, 4 * std::numbers::pi, q->axes[2], q->axis_weights[2]);
  q->coord_order = {1, 0, 2};
  q->weights = tensor_weights(q->axis_weights);
  fill_wigner(*q, 2 * L, q->axes[0]);
  return q;
}

std::string SU2::rep_name(const RepLabel& label) const {
  const int tl = label.v.at(0);
  return tl % 2 == 0 ? "l=" + std::to_string(tl / 2) : "l=" + std::to_string(tl) + "/2";
}

RepLabel SU2::parse_rep(const std::string& text) const {
  std::string t = text;
  if (t.rfind("l=", 0) == 0) t = t.substr(2);
  int tl = -1;
  try {
    const auto slash = t.find('/');
    std::size_t pos = 0;
    if (slash != std::string::npos) {
      const std::string num = t.substr(0, slash);
      if (t.substr(slash + 1) != "2") throw ParseError("spin denominator must be 2");
      tl = std::stoi(num, &pos);
      if (pos != num.size()) tl = -1;
    } else {
      const double v = std::stod(t, &pos);
      if (pos == t.size() && std::abs(2 * v - std::round(2 * v)) < 1e-12)
        tl = static_cast<int>(std::lround(2 * v));
    }
  } catch (const std::logic_error&) {
    tl = -1;
  }
  if (tl < 0) throw ParseError("bad spin '" + text + "'");
  return RepLabel{{tl}};
}

void SU2::analyze_into(std::span<const cplx> values, const Quadrature& q, int L,
                       SpectralCoefficients& out) const {
  const auto nb = q.axes[0].size();
  const auto na = static_cast<Eigen::Index>(q.axes[1].size());
  const auto ng = static_cast<Eigen::Index>(q.axes[2].size());
  const int M = 4 * L + 1;  // 2m + 2L over m in {-L, -L + 1/2, ..., L}
  RowMat Pa(M, na);
  for (int u = 0; u < M; ++u)
    for (Eigen::Index a = 0; a < na; ++a)
      Pa(u, a) = std::polar(1.0 / static_cast<double>(na), 0.5 * (u - 2 * L) * q.axes[1][static_cast<std::size_t>(a)]);
  RowMat Pg(ng, M);
  for (Eigen::Index g = 0; g < ng; ++g)
    for (int u = 0; u < M; ++u)
      Pg(g, u) = std::polar(1.0 / static_cast<double>(ng), 0.5 * (u - 2 * L) * q.axes[2][static_cast<std::size_t>(g)]);
  std::vector<Eigen::MatrixXcd*> blocks;
  for (int tl = 0; tl <= 2 * L; ++tl) blocks.push_back(&out.at(RepInfo{RepLabel{{tl}}, tl + 1, tl + 1}));
  for (std::size_t b = 0; b < nb; ++b) {
    Eigen::Map<const RowMat> f(values.data() + b * static_cast<std::size_t>(na * ng), na, ng);
    const RowMat A = Pa * f * Pg;
    const double w = q.axis_weights[0][b];
    for (int tl = 0; tl <= 2 * L; ++tl) {
      const auto& table = q.wigner[static_cast<std::size_t>(tl)];
      Eigen::MatrixXcd& blk = *blocks[static_cast<std::size_t>(tl)];
      for (int i = 0; i <= tl; ++i) {
        const int tmi = 2 * i - tl;
        const int ui = tmi + 2 * L;
        for (int j = 0; j <= tl; ++j) {
          const int tmj = 2 * j - tl;
          blk(j, i) += w * wigner_at(table, tl, static_cast<int>(b), tmi, tmj) * A(ui, tmj + 2 * L);
        }
      }
    }
  }
}

std::vector<cplx> SU2::synthesize_values(const SpectralCoefficients& sigma,
                                         const Quadrature& q) const {
  const auto nb = q.axes[0].size();
  const auto na = static_cast<Eigen::Index>(q.axes[1].size());
  const auto ng = static_cast<Eigen::Index>(q.axes[2].size());
  const int L = q.band;
  const int M = 4 * L + 1;
  RowMat Qa(na, M);
  for (Eigen::Index a = 0; a < na; ++a)
    for (int u = 0; u < M; ++u)
      Qa(a, u) = std::polar(1.0, -0.5 * (u - 2 * L) * q.axes[1][static_cast<std::size_t>(a)]);
  RowMat Qg(M, ng);
  for (int u = 0; u < M; ++u)
    for (Eigen::Index g = 0; g < ng; ++g)
      Qg(u, g) = std::polar(1.0, -0.5 * (u - 2 * L) * q.axes[2][static_cast<std::size_t>(g)]);
  std::vector<cplx> out(nb * static_cast<std::size_t>(na * ng));
  RowMat G(M, M);
  for (std::size_t b = 0; b < nb; ++b) {
    G.setZero();
    for (const auto& [label, blk] : sigma.blocks()) {
      const int tl = label.v[0];
      const auto& table = q.wigner[static_cast<std::size_t>(tl)];
      for (int i = 0; i <= tl; ++i) {
        const int tmi = 2 * i - tl;
        for (int j = 0; j <= tl; ++j) {
          const int tmj = 2 * j - tl;
          G(tmi + 2 * L, tmj + 2 * L) +=
              static_cast<double>(tl + 1) * blk.m(j, i) * wigner_at(table, tl, static_cast<int>(b), tmi, tmj);
        }
      }
    }
    Eigen::Map<RowMat> f(out.data() + b * static_cast<std::size_t>(na * ng), na, ng);
    f.noalias() = Qa * G * Qg;
  }
  return out;
}

}  // namespace orlicz::detail
