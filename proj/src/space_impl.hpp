#pragma once

#include <string>

#include "orlicz/spaces.hpp"

namespace orlicz::detail {

class Torus final : public HomogeneousSpace {
public:
  explicit Torus(int dim) : dim_(dim) {}

  std::string spec() const override { return "torus:" + std::to_string(dim_); }
  std::vector<RepInfo> reps(int L) const override;
  RepInfo info(const RepLabel& label) const override;
  int band_of(const RepLabel& label) const override;
  cplx coeff(const RepInfo& rep, int i, int j, std::span<const double> node) const override;
  std::shared_ptr<const Quadrature> quadrature(int L, int oversample) const override;
  std::string rep_name(const RepLabel& label) const override;
  RepLabel parse_rep(const std::string& text) const override;
  void analyze_into(std::span<const cplx> values, const Quadrature& q, int L,
                    SpectralCoefficients& out) const override;
  std::vector<cplx> synthesize_values(const SpectralCoefficients& sigma,
                                      const Quadrature& q) const override;

private:
  int dim_;
};

/// Nodes are (theta, phi); theta from Gauss-Legendre in cos(theta).
class Sphere2 final : public HomogeneousSpace {
public:
  std::string spec() const override { return "sphere2"; }
  std::vector<RepInfo> reps(int L) const override;
  RepInfo info(const RepLabel& label) const override;
  int band_of(const RepLabel& label) const override;
  cplx coeff(const RepInfo& rep, int i, int j, std::span<const double> node) const override;
  std::shared_ptr<const Quadrature> quadrature(int L, int oversample) const override;
  std::string rep_name(const RepLabel& label) const override;
  RepLabel parse_rep(const std::string& text) const override;
  void analyze_into(std::span<const cplx> values, const Quadrature& q, int L,
                    SpectralCoefficients& out) const override;
  std::vector<cplx> synthesize_values(const SpectralCoefficients& sigma,
                                      const Quadrature& q) const override;
};

/// Nodes are zyz Euler angles (alpha, beta, gamma) with alpha in [0, 2pi),
/// gamma in [0, 4pi). Band L holds every spin l <= L, half-integers included.
class SU2 final : public HomogeneousSpace {
public:
  std::string spec() const override { return "su2"; }
  std::vector<RepInfo> reps(int L) const override;
  RepInfo info(const RepLabel& label) const override;
  int band_of(const RepLabel& label) const override;
  cplx coeff(const RepInfo& rep, int i, int j, std::span<const double> node) const override;
  std::shared_ptr<const Quadrature> quadrature(int L, int oversample) const override;
  std::string rep_name(const RepLabel& label) const override;
  RepLabel parse_rep(const std::string& text) const override;
  void analyze_into(std::span<const cplx> values, const Quadrature& q, int L,
                    SpectralCoefficients& out) const override;
  std::vector<cplx> synthesize_values(const SpectralCoefficients& sigma,
                                      const Quadrature& q) const override;
};

/// Flat weights of a tensor grid from per-axis weights (row-major).
std::vector<double> tensor_weights(const std::vector<std::vector<double>>& axis_weights);

/// n uniform points k * period / n with weights 1/n.
void uniform_axis(int n, double period, std::vector<double>& nodes, std::vector<double>& weights);

/// Value of d^j_{m m'} from a flattened table at node b; tj = 2j, tm = 2m.
inline double wigner_at(const std::vector<double>& table, int tj, int b, int tm, int tmp) {
  const int n = tj + 1;
  const int r = (tm + tj) / 2;
  const int c = (tmp + tj) / 2;
  return table[static_cast<std::size_t>(b) * n * n + static_cast<std::size_t>(r) * n + c];
}

void check_quadrature_args(int L, int oversample);

}  // namespace orlicz::detail

namespace orlicz::detail {
/// Fills q.wigner with d^j(beta_b) for 2j <= twice_max at every angle.
void fill_wigner(Quadrature& q, int twice_max, const std::vector<double>& angles);
/// Gauss-Legendre in cos(angle) on [0, pi]; weights normalized to sum 1.
void polar_axis(int n, std::vector<double>& angles, std::vector<double>& weights);
}  // namespace orlicz::detail
