#include "orlicz/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orlicz/error.hpp"

namespace orlicz {

namespace {

using nlohmann::ordered_json;

// NaN and inf are not JSON numbers; emit them as strings.
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json samples_json(const VerificationReport& r) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : r.samples)
    arr.push_back({{"lhs", num(s.lhs)}, {"rhs", num(s.rhs)}, {"margin", num(s.margin)},
                   {"ratio", num(s.ratio)}, {"seed", s.seed}});
  return arr;
}

}  // namespace

std::string coefficients_to_json(const SpectralCoefficients& sigma) {
  if (!sigma.space()) throw BadParam("coefficients without a space");
  const auto& sp = *sigma.space();
  ordered_json blocks = ordered_json::array();
  for (const auto& [label, blk] : sigma.blocks()) {
    ordered_json entries = ordered_json::array();
    for (int r = 0; r < blk.m.rows(); ++r)
      for (int c = 0; c < blk.m.cols(); ++c)
        entries.push_back({num(blk.m(r, c).real()), num(blk.m(r, c).imag())});
    blocks.push_back({{"rep", sp.rep_name(label)},
                      {"d", blk.info.d},
                      {"k", blk.info.k},
                      {"entries_re_im", entries}});
  }
  ordered_json j = {{"space", sp.spec()}, {"L", sigma.band()}, {"blocks", blocks}};
  return dump(j);
}

SpectralCoefficients coefficients_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto space = make_space(j.at("space").get<std::string>());
    SpectralCoefficients sigma(space, j.at("L").get<int>());
    for (const auto& b : j.at("blocks")) {
      const auto info = space->info(space->parse_rep(b.at("rep").get<std::string>()));
      if (b.contains("d") && b.at("d").get<int>() != info.d)
        throw ParseError("block dimension does not match rep " + b.at("rep").get<std::string>());
      const auto& e = b.at("entries_re_im");
      if (e.size() != static_cast<std::size_t>(info.d) * info.d)
        throw ParseError("block of rep " + b.at("rep").get<std::string>() + " has wrong size");
      Eigen::MatrixXcd m(info.d, info.d);
      for (int r = 0; r < info.d; ++r)
        for (int c = 0; c < info.d; ++c) {
          const auto& z = e.at(static_cast<std::size_t>(r) * info.d + c);
          m(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
        }
      sigma.set(info, std::move(m));
    }
    return sigma;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("coefficient json: ") + ex.what());
  }
}

std::string report_to_json(const VerificationReport& r) {
  ordered_json metrics = ordered_json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
  ordered_json notes = ordered_json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  ordered_json refinement = {{"oversample", r.refinement.oversample},
                             {"delta", num(r.refinement.delta)},
                             {"margin", num(r.refinement.margin)}};
  if (!r.refinement.computed) refinement = nullptr;
  ordered_json j = {{"inequality", r.inequality},
                    {"space", r.space},
                    {"pair", r.pair},
                    {"L", r.L},
                    {"n", r.n},
                    {"seed", r.seed},
                    {"oversample", r.oversample},
                    {"tol", num(r.tol)},
                    {"samples", samples_json(r)},
                    {"aggregate", {{"max_margin", num(r.max_margin)}, {"max_ratio", num(r.max_ratio)}}},
                    {"refinement", refinement},
                    {"metrics", metrics},
                    {"notes", notes},
                    {"verdict", r.verdict ? "pass" : "fail"}};
  return dump(j);
}

std::string report_to_csv(const VerificationReport& r) {
  std::string out = "index,seed,lhs,rhs,margin,ratio\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    out += std::to_string(i) + "," + std::to_string(s.seed) + "," + g17(s.lhs) + "," + g17(s.rhs) +
           "," + g17(s.margin) + "," + g17(s.ratio) + "\n";
  }
  return out;
}

std::string ratio_result_to_json(const RatioSearchResult& r) {
  const auto space = make_space(r.space);
  ordered_json lambda = ordered_json::array();
  for (const auto& l : r.lambda) lambda.push_back(space->rep_name(l));
  ordered_json per = ordered_json::array();
  for (double v : r.restart_best) per.push_back(num(v));
  ordered_json j = {{"space", r.space},
                    {"pair", r.pair},
                    {"lambda", lambda},
                    {"restarts", r.restarts},
                    {"sweeps", r.sweeps},
                    {"evaluations", r.evaluations},
                    {"best_ratio", num(r.best_ratio)},
                    {"reevaluated", num(r.reevaluated)},
                    {"a_priori_bound", num(r.bound)},
                    {"within_bound", r.best_ratio <= r.bound},
                    {"constant_ratio", num(r.constant_ratio)},
                    {"restart_best", per},
                    {"certificate", ordered_json::parse(coefficients_to_json(r.best))}};
  return dump(j);
}

std::string ratio_result_to_csv(const RatioSearchResult& r) {
  std::string out = "restart,best_ratio\n";
  for (std::size_t i = 0; i < r.restart_best.size(); ++i)
    out += std::to_string(i) + "," + g17(r.restart_best[i]) + "\n";
  return out;
}

std::string growth_fit_to_json(const std::string& psi_label, const GrowthFit& fit) {
  ordered_json j = {{"psi", psi_label},
                    {"c0", num(fit.c0)},
                    {"p", num(fit.p)},
                    {"t_min", num(fit.t_min)},
                    {"t_max", num(fit.t_max)}};
  return dump(j);
}

std::string growth_fit_to_csv(const std::string& psi_label, const GrowthFit& fit) {
  return "psi,c0,p,t_min,t_max\n" + psi_label + "," + g17(fit.c0) + "," + g17(fit.p) + "," +
         g17(fit.t_min) + "," + g17(fit.t_max) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());
  }
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw IoError("cannot rename onto " + path + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace orlicz
