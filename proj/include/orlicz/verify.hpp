#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/spaces.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct SampleRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // verdict uses max margin <= tol
  double ratio = 0.0;   // lhs / rhs where meaningful, else 0
  std::uint64_t seed = 0;
};

struct Refinement {
  bool computed = false;
  int oversample = 0;  // doubled oversample used for the re-run
  double delta = 0.0;  // largest relative change of any reported value
  double margin = 0.0; // worst sample's margin at the doubled oversample
  bool ok = false;     // delta < 1e-6
};

/// Outcome of one inequality check over a batch of samples.
///
/// `verdict` is true exactly when every sample margin is <= `tol` and, when a
/// refinement ran, the worst sample still is at the doubled oversample. Margins are
/// lhs - rhs for the inequalities; for "parseval" the margin is the relative
/// gap |lhs - rhs| / rhs. Extra diagnostics live in `metrics` and `notes`.
struct VerificationReport {
  std::string inequality;
  std::string space;
  std::string pair;
  int L = 0;
  int n = 0;
  std::uint64_t seed = 0;
  int oversample = 0;
  double tol = 0.0;
  std::vector<SampleRecord> samples;
  double max_margin = 0.0;
  double max_ratio = 0.0;
  Refinement refinement;
  std::map<std::string, double> metrics;
  std::map<std::string, std::string> notes;
  bool verdict = false;
};

struct VerifyOptions {
  std::string space = "torus:1";
  std::string pair = "power:1.5";  // Young spec for Phi; Psi is its numeric conjugate
  int L = 8;
  int n = 200;
  std::uint64_t seed = 0;
  std::optional<int> oversample;  // 1 for parseval and embeddings, else 4, when unset
  std::optional<double> tol;      // per-inequality default when unset
  double p = 1.5;               // exponent for hy-lp
  std::string profile = "flat";  // spectral profile of random samples
  bool refine = true;            // re-run the worst sample at 2x oversample
  bool stability = true;         // hy-orlicz: repeat at 2L
  bool include_constant = true;  // hy-orlicz: f = 1 probe as sample 0
};

/// Normalized pair for a Young spec; Psi is the numeric conjugate.
ComplementaryPair pair_from_spec(const std::string& spec);

/// Random band-limited function on the space's quadrature scaled to unit L2 norm.
SampledFunction random_unit_function(std::shared_ptr<const HomogeneousSpace> space,
                                     std::shared_ptr<const Quadrature> q, int L,
                                     std::uint64_t seed, const std::string& profile = "flat");

/// ||fhat||_{l^q} <= ||f||_{L^p}, q = p / (p - 1).
VerificationReport verify_hy_lp(const VerifyOptions& opts);
/// N_Psi(F_f) <= r N_Phi(f) with r the a priori constant of the band; reports
/// the empirical max ratio as a lower bound for the best constant.
VerificationReport verify_hy_orlicz(const VerifyOptions& opts);
/// |int f g| <= N_Phi(f) N_Psi(g) plus the extremal-function diagnostics.
VerificationReport verify_hoelder(const VerifyOptions& opts);
/// l^{p1} -> l^{p2} chain and the Schatten comparisons.
VerificationReport verify_embeddings(const VerifyOptions& opts);
/// ||f||_2^2 = sum d ||fhat||_HS^2.
VerificationReport verify_parseval(const VerifyOptions& opts);

/// Dispatch by id: hy-lp, hy-orlicz, hoelder, embeddings, parseval.
VerificationReport run_verification(const std::string& inequality, const VerifyOptions& opts);

struct GrowthFit {
  double c0 = 0.0;
  double p = 0.0;
  double t_min = 1e-6;
  double t_max = 1e3;
};

struct GrowthFitOptions {
  double t_min = 1e-6;
  double t_max = 1e3;
  int points = 181;
  double p_step = 0.05;
  double p_max = 10.0;
  double slope_tol = 1e-3;  // log-slope of deriv(t)/t^p still counted as bounded
};

/// Least grid p >= 1 with deriv(t) / t^p bounded on [t_min, t_max], and
/// c0 = the sampled sup. Throws NoFit when no p <= p_max works.
GrowthFit growth_fit(const YoungFunction& psi, const GrowthFitOptions& opts = {});

/// max over pi in the support of sqrt(d k) / Psi^{-1}(Psi(1) / (#support k d)).
double a_priori_bound(const YoungFunction& psi, const std::vector<RepInfo>& support);

struct RatioSearchOptions {
  int restarts = 50;
  int max_sweeps = 200;
  double line_tol = 1e-8;
  double stop_rel = 1e-10;  // end a restart when a sweep gains less than this
  std::uint64_t seed = 0;
  int oversample = 4;
};

struct RatioSearchResult {
  std::string space;
  std::string pair;
  std::vector<RepLabel> lambda;
  double best_ratio = 0.0;
  SpectralCoefficients best;
  double reevaluated = 0.0;
  double bound = 0.0;             // a priori bound for this support
  double constant_ratio = 0.0;    // ratio of f = 1 when the trivial rep is in the support
  int restarts = 0;
  int sweeps = 0;
  long evaluations = 0;
  std::vector<double> restart_best;  // best ratio per restart
};

/// Support spec: "first:N" (first N labels in enumeration order), "band:L",
/// or rep names separated by ';'.
std::vector<RepInfo> parse_support(const HomogeneousSpace& space, const std::string& spec);

/// Ratio N_Psi(F_f) / N_Phi(f) for f = synthesize(sigma) on quadrature q.
double hy_ratio(const ComplementaryPair& pair, const SpectralCoefficients& sigma,
                std::shared_ptr<const Quadrature> q);

/// Multi-start coordinate ascent for sup N_Psi(F_f) / N_Phi(f) over f spanned by Lambda.
RatioSearchResult ratio_search(const std::string& space, const std::string& pair,
                               const std::string& lambda, const RatioSearchOptions& opts = {});

}  // namespace orlicz
