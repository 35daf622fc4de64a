#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "orlicz/error.hpp"
#include "space_impl.hpp"

namespace orlicz::detail {

namespace {

// Applies M (out x in) along `axis` of a row-major tensor with the given shape.
std::vector<cplx> apply_axis(const std::vector<cplx>& data, std::vector<int>& shape, int axis,
                             const Eigen::MatrixXcd& M) {
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (int a = 0; a < axis; ++a) outer *= static_cast<std::size_t>(shape[static_cast<std::size_t>(a)]);
  for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < shape.size(); ++a)
    inner *= static_cast<std::size_t>(shape[a]);
  const auto n_in = static_cast<std::size_t>(M.cols());
  const auto n_out = static_cast<std::size_t>(M.rows());
  std::vector<cplx> out(outer * n_out * inner, cplx(0.0));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t r = 0; r < n_out; ++r)
      for (std::size_t c = 0; c < n_in; ++c) {
        const cplx m = M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        const cplx* src = &data[(o * n_in + c) * inner];
        cplx* dst = &out[(o * n_out + r) * inner];
        for (std::size_t t = 0; t < inner; ++t) dst[t] += m * src[t];
      }
  shape[static_cast<std::size_t>(axis)] = static_cast<int>(n_out);
  return out;
}

}  // namespace

std::vector<RepInfo> Torus::reps(int L) const {
  std::vector<RepInfo> out;
  if (L < 0) return out;
  const int side = 2 * L + 1;
  std::size_t total = 1;
  for (int a = 0; a < dim_; ++a) total *= static_cast<std::size_t>(side);
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    RepLabel lab;
    lab.v.resize(static_cast<std::size_t>(dim_));
    std::size_t rem = idx;
    for (int a = dim_ - 1; a >= 0; --a) {
      lab.v[static_cast<std::size_t>(a)] = static_cast<int>(rem % side) - L;
      rem /= side;
    }
    out.push_back(RepInfo{std::move(lab), 1, 1});
  }
  std::sort(out.begin(), out.end(), [](const RepInfo& a, const RepInfo& b) { return a.label < b.label; });
  return out;
}

RepInfo Torus::info(const RepLabel& label) const {
  if (static_cast<int>(label.v.size()) != dim_) throw BadParam("torus label has wrong dimension");
  return RepInfo{label, 1, 1};
}

int Torus::band_of(const RepLabel& label) const {
  int m = 0;
  for (int x : label.v) m = std::max(m, std::abs(x));
  return m;
}

cplx Torus::coeff(const RepInfo& rep, int i, int j, std::span<const double> node) const {
  if (i != 0 || j != 0) return cplx(0.0);
  double phase = 0.0;
  for (int a = 0; a < dim_; ++a)
    phase += rep.label.v[static_cast<std::size_t>(a)] * node[static_cast<std::size_t>(a)];
  return std::polar(1.0, phase);
}

std::shared_ptr<const Quadrature> Torus::quadrature(int L, int oversample) const {
  check_quadrature_args(L, oversample);
  auto q = std::make_shared<Quadrature>();
  q->band = L;
  q->oversample = oversample;
  const int n = 2 * oversample * L + 1;
  q->axes.resize(static_cast<std::size_t>(dim_));
  q->axis_weights.resize(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) {
    uniform_axis(n, 2 * std::numbers::pi, q->axes[static_cast<std::size_t>(a)],
                 q->axis_weights[static_cast<std::size_t>(a)]);
    q->coord_order.push_back(a);
  }
  q->weights = tensor_weights(q->axis_weights);
  return q;
}

std::string Torus::rep_name(const RepLabel& label) const {
  std::string s = "(";
  for (std::size_t a = 0; a < label.v.size(); ++a) {
    if (a) s += ",";
    s += std::to_string(label.v[a]);
  }
  return s + ")";
}

RepLabel Torus::parse_rep(const std::string& text) const {
  std::string t;
  for (char ch : text)
    if (ch != '(' && ch != ')' && ch != ' ') t += ch;
  RepLabel lab;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      lab.v.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw ParseError("bad torus frequency '" + text + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad torus frequency '" + text + "'");
    }
  }
  if (static_cast<int>(lab.v.size()) != dim_) throw ParseError("torus frequency needs " + std::to_string(dim_) + " entries");
  return lab;
}

void Torus::analyze_into(std::span<const cplx> values, const Quadrature& q, int L,
                         SpectralCoefficients& out) const {
  const int side = 2 * L + 1;
  std::vector<int> shape;
  for (const auto& ax : q.axes) shape.push_back(static_cast<int>(ax.size()));
  std::vector<cplx> data(values.begin(), values.end());
  for (int a = 0; a < dim_; ++a) {
    const auto& nodes = q.axes[static_cast<std::size_t>(a)];
    const auto& w = q.axis_weights[static_cast<std::size_t>(a)];
    Eigen::MatrixXcd M(side, static_cast<Eigen::Index>(nodes.size()));
    for (int r = 0; r < side; ++r)
      for (std::size_t t = 0; t < nodes.size(); ++t)
        M(r, static_cast<Eigen::Index>(t)) = w[t] * std::polar(1.0, -(r - L) * nodes[t]);
    data = apply_axis(data, shape, a, M);
  }
  for (std::size_t idx = 0; idx < data.size(); ++idx) {
    RepLabel lab;
    lab.v.resize(static_cast<std::size_t>(dim_));
    std::size_t rem = idx;
    for (int a = dim_ - 1; a >= 0; --a) {
      lab.v[static_cast<std::size_t>(a)] = static_cast<int>(rem % side) - L;
      rem /= side;
    }
    out.at(RepInfo{std::move(lab), 1, 1})(0, 0) = data[idx];
  }
}

std::vector<cplx> Torus::synthesize_values(const SpectralCoefficients& sigma,
                                           const Quadrature& q) const {
  int L = 0;
  for (const auto& [label, blk] : sigma.blocks()) L = std::max(L, band_of(label));
  const int side = 2 * L + 1;
  std::size_t total = 1;
  for (int a = 0; a < dim_; ++a) total *= static_cast<std::size_t>(side);
  std::vector<cplx> data(total, cplx(0.0));
  for (const auto& [label, blk] : sigma.blocks()) {
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a) idx = idx * side + static_cast<std::size_t>(label.v[static_cast<std::size_t>(a)] + L);
    data[idx] += blk.m(0, 0);
  }
  std::vector<int> shape(static_cast<std::size_t>(dim_), side);
  for (int a = 0; a < dim_; ++a) {
    const auto& nodes = q.axes[static_cast<std::size_t>(a)];
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(nodes.size()), side);
    for (std::size_t t = 0; t < nodes.size(); ++t)
      for (int c = 0; c < side; ++c)
        M(static_cast<Eigen::Index>(t), c) = std::polar(1.0, (c - L) * nodes[t]);
    data = apply_axis(data, shape, a, M);
  }
  return data;
}

}  // namespace orlicz::detail
