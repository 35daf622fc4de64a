#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "orlicz/spaces.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

enum class NormMethod { bisection, closed_form, dense_scan };

std::string to_string(NormMethod m);

struct NormResult {
  double value = 0.0;
  NormMethod method = NormMethod::closed_form;
  double refinement_error = 0.0;  // width of the final bracket, or a cross-check gap
  int iterations = 0;
  double lower = 0.0;  // certified bracket around `value`
  double upper = 0.0;
};

struct GaugeOptions {
  // The gauge threshold is Phi(1); set to compare against the classical
  // inf{lambda : rho(f / lambda) <= 1}.
  bool classical_threshold = false;
  double rel_tol = 1e-13;
  int max_iter = 400;
};

/// Per-rep scalar F(pi) = k^{-1/2} ||sigma(pi)||_HS.
struct DualProfile {
  std::vector<RepLabel> labels;
  std::vector<double> F;
  std::vector<int> d;
  std::vector<int> k;

  std::size_t size() const { return F.size(); }
};

DualProfile profile(const SpectralCoefficients& sigma);

/// sum w Phi(|f|); +inf as soon as one term is.
double modular(const YoungFunction& phi, const SampledFunction& f);
double modular(const YoungFunction& phi, std::span<const double> magnitudes,
               std::span<const double> weights);

/// inf{lambda > 0 : sum w Phi(a / lambda) <= threshold}, the common gauge
/// behind both Luxemburg norms. `a` must be nonnegative.
NormResult gauge(const YoungFunction& phi, std::span<const double> a, std::span<const double> w,
                 double threshold, const GaugeOptions& opts = {});

/// Luxemburg norm on G/K with threshold Phi(1) (or 1 with classical_threshold).
/// Throws NonFiniteModular when the modular is +inf on the whole bracket.
NormResult luxemburg(const YoungFunction& phi, const SampledFunction& f,
                     const GaugeOptions& opts = {});

/// sup{ integral |f v| : rho_Psi(v) <= Phi(1) }, attained by v = Phi'(|f| / mu).
/// The multiplier mu is found by bracketing; `lower`/`upper` carry the
/// equivalence bracket [Phi(1) N_Phi(f), 2 N_Phi(f)] and `refinement_error`
/// the gap to the Amemiya form inf_k (Phi(1) + rho_Phi(k f)) / k.
NormResult orlicz_norm(const ComplementaryPair& pair, const SampledFunction& f,
                       const GaugeOptions& opts = {});

/// inf_k (Phi(1) + rho_Phi(k f)) / k by golden-section search in log k.
double orlicz_norm_amemiya(const YoungFunction& phi, const SampledFunction& f);

/// (sum_nodes w |f|^p)^{1/p}; p = inf gives max |f|.
double lp_norm(const SampledFunction& f, double p);

/// (sum d k^{1 - p/2} ||sigma||_HS^p)^{1/p}; p = inf gives max k^{-1/2} ||sigma||_HS.
double dual_lp(const SpectralCoefficients& sigma, double p);

/// (sum d ||sigma||_{S^p}^p)^{1/p}; p = inf gives the largest operator norm.
double dual_schatten(const SpectralCoefficients& sigma, double p);

/// Singular values of a block whose rows >= k vanish, from the k x k Hermitian
/// eigenproblem of R R^*; eigenvalues below 1e-13 of the largest are zeroed.
std::vector<double> singular_values(const Eigen::MatrixXcd& block, int k);

/// Sequence gauge inf{lambda : sum Phi(F / lambda) k d <= Phi(1)}.
NormResult dual_orlicz(const YoungFunction& phi, const DualProfile& prof,
                       const GaugeOptions& opts = {});
NormResult dual_orlicz(const YoungFunction& phi, const SpectralCoefficients& sigma,
                       const GaugeOptions& opts = {});

/// "lux:<young>", "orlicz:<young>", "lp:<p>", "dual-lp:<p>", "dual-sch:<p>",
/// "dual-orlicz:<young>"; p accepts "inf".
struct NormSpec {
  enum class Kind { lux, orlicz, lp, dual_lp, dual_sch, dual_orlicz } kind = Kind::lux;
  std::string young;
  double p = 2.0;

  bool dual_side() const { return kind == Kind::dual_lp || kind == Kind::dual_sch || kind == Kind::dual_orlicz; }
};
NormSpec parse_norm_spec(const std::string& text);
double parse_exponent(const std::string& text);

/// Evaluates a function-side spec on f, or a dual-side spec on analyze(f, band).
double evaluate_norm(const NormSpec& spec, const SampledFunction& f, int band);

}  // namespace orlicz
