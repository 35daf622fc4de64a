#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace orlicz {

using cplx = std::complex<double>;

/// Label of a class-I representation.
///   torus:  the frequency vector n in Z^dim
///   su2:    {2l}, spin l in (1/2)Z
///   sphere2:{l}, integer l
/// Ordered by band (max |entry|) first, then lexicographically, so that the
/// first k labels of an enumeration stay fixed as the band limit grows.
struct RepLabel {
  std::vector<int> v;

  friend bool operator==(const RepLabel&, const RepLabel&) = default;
  friend bool operator<(const RepLabel& a, const RepLabel& b);
};

struct RepInfo {
  RepLabel label;
  int d = 1;  // dimension d_pi
  int k = 1;  // number of K-invariant vectors k_pi
};

class HomogeneousSpace;

/// Tensor-product quadrature for the normalized invariant measure.
///
/// Nodes are stored in row-major order over `axes` (storage order is space
/// specific); `coord_order` maps node coordinates to axes so that `node(i)`
/// returns coordinates in the space's documented order.
struct Quadrature {
  int band = 0;        // products of coefficients up to this band integrate exactly
  int oversample = 1;
  std::vector<std::vector<double>> axes;
  std::vector<std::vector<double>> axis_weights;
  std::vector<int> coord_order;
  std::vector<double> weights;  // flat, sums to 1

  // Wigner small-d tables d^j_{m m'}(beta) per 2j <= table_twice_max, indexed
  // [2j][b * (2j+1)^2 + (m + j) * (2j+1) + (m' + j)] over the first axis nodes.
  std::vector<std::vector<double>> wigner;

  std::size_t size() const { return weights.size(); }
  std::vector<double> node(std::size_t i) const;
};

/// An element of Sigma(G/K): finitely supported, d x d blocks with rows >= k zero.
class SpectralCoefficients {
public:
  struct Block {
    RepInfo info;
    Eigen::MatrixXcd m;
  };

  SpectralCoefficients() = default;
  SpectralCoefficients(std::shared_ptr<const HomogeneousSpace> space, int band);

  /// Inserts or replaces a block; throws BadParam if the shape is wrong or any
  /// row at index >= k is nonzero.
  void set(const RepInfo& info, Eigen::MatrixXcd block);
  /// Zero block of the right shape for `info` if absent.
  Eigen::MatrixXcd& at(const RepInfo& info);
  const Block* find(const RepLabel& label) const;

  const std::map<RepLabel, Block>& blocks() const { return blocks_; }
  const std::shared_ptr<const HomogeneousSpace>& space() const { return space_; }
  int band() const { return band_; }
  void set_band(int band) { band_ = band; }

  SpectralCoefficients scaled(cplx c) const;
  /// Keeps only the labels in `support`.
  SpectralCoefficients restricted(std::span<const RepLabel> support) const;
  std::vector<RepLabel> support() const;

private:
  std::shared_ptr<const HomogeneousSpace> space_;
  int band_ = 0;
  std::map<RepLabel, Block> blocks_;
};

/// Function on G/K by its values at the nodes of a quadrature.
struct SampledFunction {
  std::shared_ptr<const HomogeneousSpace> space;
  std::shared_ptr<const Quadrature> quad;
  std::vector<cplx> values;
  int band_hint = -1;
  std::uint64_t seed = 0;
};

class HomogeneousSpace : public std::enable_shared_from_this<HomogeneousSpace> {
public:
  virtual ~HomogeneousSpace() = default;

  virtual std::string spec() const = 0;
  /// Class-I dual up to band L, in RepLabel order.
  virtual std::vector<RepInfo> reps(int L) const = 0;
  /// Validates a label and fills in (d, k).
  virtual RepInfo info(const RepLabel& label) const = 0;
  /// Band limit needed to contain `label`.
  virtual int band_of(const RepLabel& label) const = 0;
  /// Matrix coefficient pi_{ij} at a node (0-based; zero for j >= k).
  virtual cplx coeff(const RepInfo& rep, int i, int j, std::span<const double> node) const = 0;
  /// Full d x d matrix pi(x) with columns >= k zeroed.
  Eigen::MatrixXcd rep_matrix(const RepInfo& rep, std::span<const double> node) const;

  virtual std::shared_ptr<const Quadrature> quadrature(int L, int oversample) const = 0;

  virtual std::string rep_name(const RepLabel& label) const = 0;
  virtual RepLabel parse_rep(const std::string& text) const = 0;

  // Fast transforms on the space's own tensor quadrature.
  virtual void analyze_into(std::span<const cplx> values, const Quadrature& q, int L,
                            SpectralCoefficients& out) const = 0;
  virtual std::vector<cplx> synthesize_values(const SpectralCoefficients& sigma,
                                              const Quadrature& q) const = 0;
};

/// "torus:<dim>", "sphere2", "su2".
std::shared_ptr<const HomogeneousSpace> make_space(const std::string& spec);
std::vector<std::string> builtin_space_specs();

/// Fourier coefficients fhat(pi)_{ji} = sum_nodes w f(x) conj(pi_ij(x)) for every
/// pi up to band L. Throws BandLimitExceeded when L exceeds the quadrature band.
SpectralCoefficients analyze(const SampledFunction& f, int L);

/// f(x) = sum_pi d_pi Tr(sigma(pi) pi(x)) at the quadrature nodes.
SampledFunction synthesize(const SpectralCoefficients& sigma, std::shared_ptr<const Quadrature> q);

/// Evaluates `fn(node)` at every node.
template <class F>
SampledFunction sample(std::shared_ptr<const HomogeneousSpace> space,
                       std::shared_ptr<const Quadrature> q, F&& fn) {
  SampledFunction f{std::move(space), q, {}, q->band, 0};
  f.values.resize(q->size());
  for (std::size_t i = 0; i < q->size(); ++i) f.values[i] = fn(q->node(i));
  return f;
}

/// Independent complex Gaussians on every admissible entry (row < k) of every
/// rep up to band L, scaled per rep by the profile: "flat" or "decay:s" for
/// (1 + band)^{-s}. Deterministic per seed.
SpectralCoefficients random_bandlimited(std::shared_ptr<const HomogeneousSpace> space, int L,
                                        std::uint64_t seed, const std::string& profile = "flat");

double hs_norm(const Eigen::MatrixXcd& m);

/// Weighted sum of d_pi ||sigma(pi)||_HS^2 (the Plancherel side).
double plancherel_sq(const SpectralCoefficients& sigma);

/// sum_nodes w |f|^2.
double l2_sq(const SampledFunction& f);

/// All Wigner small-d matrices d^j(beta) for 2j = 0..twice_max at one angle,
/// flattened as in Quadrature::wigner.
std::vector<std::vector<double>> wigner_small_d(int twice_max, double beta);

}  // namespace orlicz
