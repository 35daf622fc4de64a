#include <cmath>
#include <numbers>

#include "orlicz/error.hpp"
#include "space_impl.hpp"

namespace orlicz::detail {

namespace {

int parse_int_label(const std::string& text) {
  std::string t = text;
  if (t.rfind("l=", 0) == 0) t = t.substr(2);
  try {
    std::size_t pos = 0;
    const int v = std::stoi(t, &pos);
    if (pos != t.size()) throw ParseError("bad degree '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad degree '" + text + "'");
  }
}

}  // namespace

std::vector<RepInfo> Sphere2::reps(int L) const {
  std::vector<RepInfo> out;
  for (int l = 0; l <= L; ++l) out.push_back(RepInfo{RepLabel{{l}}, 2 * l + 1, 1});
  return out;
}

RepInfo Sphere2::info(const RepLabel& label) const {
  if (label.v.size() != 1 || label.v[0] < 0) throw BadParam("sphere2 label must be a degree l >= 0");
  return RepInfo{label, 2 * label.v[0] + 1, 1};
}

int Sphere2::band_of(const RepLabel& label) const { return label.v.at(0); }

cplx Sphere2::coeff(const RepInfo& rep, int i, int j, std::span<const double> node) const {
  if (j != 0) return cplx(0.0);
  const int l = rep.label.v[0];
  const int m = i - l;
  const auto d = wigner_small_d(2 * l, node[0]);
  const double dm0 = d[static_cast<std::size_t>(2 * l)][static_cast<std::size_t>(i * (2 * l + 1) + l)];
  return std::polar(dm0, m * node[1]);
}

std::shared_ptr<const Quadrature> Sphere2::quadrature(int L, int oversample) const {
  check_quadrature_args(L, oversample);
  auto q = std::make_shared<Quadrature>();
  q->band = L;
  q->oversample = oversample;
  q->axes.resize(2);
  q->axis_weights.resize(2);
  polar_axis(oversample * (L + 1), q->axes[0], q->axis_weights[0]);
  uniform_axis(2 * oversample * L + 1, 2 * std::numbers::pi, q->axes[1], q->axis_weights[1]);
  q->coord_order = {0, 1};
  q->weights = tensor_weights(q->axis_weights);
  fill_wigner(*q, 2 * L, q->axes[0]);
  return q;
}

std::string Sphere2::rep_name(const RepLabel& label) const { return "l=" + std::to_string(label.v.at(0)); }

RepLabel Sphere2::parse_rep(const std::string& text) const {
  const int l = parse_int_label(text);
  if (l < 0) throw ParseError("degree must be >= 0");
  return RepLabel{{l}};
}

void Sphere2::analyze_into(std::span<const cplx> values, const Quadrature& q, int L,
                           SpectralCoefficients& out) const {
  const auto nb = static_cast<Eigen::Index>(q.axes[0].size());
  const auto np = static_cast<Eigen::Index>(q.axes[1].size());
  const int M = 2 * L + 1;
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> F(values.data(), nb, np);
  Eigen::MatrixXcd E(np, M);
  for (Eigen::Index p = 0; p < np; ++p)
    for (int c = 0; c < M; ++c)
      E(p, c) = std::polar(1.0 / static_cast<double>(np), -(c - L) * q.axes[1][static_cast<std::size_t>(p)]);
  const Eigen::MatrixXcd A = F * E;  // A(b, m + L)
  for (int l = 0; l <= L; ++l) {
    Eigen::MatrixXcd& blk = out.at(RepInfo{RepLabel{{l}}, 2 * l + 1, 1});
    const auto& table = q.wigner[static_cast<std::size_t>(2 * l)];
    for (int m = -l; m <= l; ++m) {
      cplx acc(0.0);
      for (Eigen::Index b = 0; b < nb; ++b)
        acc += q.axis_weights[0][static_cast<std::size_t>(b)] *
               wigner_at(table, 2 * l, static_cast<int>(b), 2 * m, 0) * A(b, m + L);
      blk(0, m + l) = acc;
    }
  }
}

std::vector<cplx> Sphere2::synthesize_values(const SpectralCoefficients& sigma,
                                             const Quadrature& q) const {
  const auto nb = static_cast<Eigen::Index>(q.axes[0].size());
  const auto np = static_cast<Eigen::Index>(q.axes[1].size());
  const int L = q.band;
  const int M = 2 * L + 1;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(nb, M);
  for (const auto& [label, blk] : sigma.blocks()) {
    const int l = label.v[0];
    const auto& table = q.wigner[static_cast<std::size_t>(2 * l)];
    for (int m = -l; m <= l; ++m) {
      const cplx s = static_cast<double>(2 * l + 1) * blk.m(0, m + l);
      if (s == cplx(0.0)) continue;
      for (Eigen::Index b = 0; b < nb; ++b)
        G(b, m + L) += s * wigner_at(table, 2 * l, static_cast<int>(b), 2 * m, 0);
    }
  }
  Eigen::MatrixXcd E(M, np);
  for (int c = 0; c < M; ++c)
    for (Eigen::Index p = 0; p < np; ++p)
      E(c, p) = std::polar(1.0, (c - L) * q.axes[1][static_cast<std::size_t>(p)]);
  const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> F = G * E;
  return std::vector<cplx>(F.data(), F.data() + F.size());
}

}  // namespace orlicz::detail
