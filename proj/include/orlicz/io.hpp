#pragma once

#include <string>

#include "orlicz/spaces.hpp"
#include "orlicz/verify.hpp"

namespace orlicz {

/// {space, L, blocks: [{rep, d, k, entries_re_im: [[re, im], ...] row-major}]}
std::string coefficients_to_json(const SpectralCoefficients& sigma);
/// Inverse of coefficients_to_json. Throws ParseError.
SpectralCoefficients coefficients_from_json(const std::string& text);

/// Report document; numbers are printed in shortest round-trip form, so the
/// output is byte-stable for equal inputs.
std::string report_to_json(const VerificationReport& r);
/// One row per sample: index,seed,lhs,rhs,margin,ratio with %.17g numbers.
std::string report_to_csv(const VerificationReport& r);

std::string ratio_result_to_json(const RatioSearchResult& r);
/// restart,best_ratio rows.
std::string ratio_result_to_csv(const RatioSearchResult& r);

std::string growth_fit_to_json(const std::string& psi_label, const GrowthFit& fit);
std::string growth_fit_to_csv(const std::string& psi_label, const GrowthFit& fit);

/// Writes to `path.tmp` and renames over `path`, so readers never see a
/// partial file. Creates missing parent directories. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);

/// Reads a whole file. Throws IoError.
std::string read_file(const std::string& path);

}  // namespace orlicz
