#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace orlicz {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUsage = 64;

/// Settings of one CLI run after merging flags, the config file and defaults.
struct RunConfig {
  std::string command;  // list | verify | ratio | fit-growth
  std::string inequality;
  std::string space = "torus:1";
  std::string pair = "power:1.5";
  std::string young;  // fit-growth: fit this gauge directly instead of the pair's Psi
  double p = 1.5;
  int L = 8;
  int n = 200;
  std::uint64_t seed = 0;
  std::optional<int> oversample;
  std::optional<double> tol;
  std::string profile = "flat";
  std::string support = "first:6";
  int restarts = 50;
  int max_sweeps = 200;
  bool stability = true;
  std::string out;
  std::string format = "json";
};

/// Entry point of the orlicz-hy tool. Writes the document to --out (or to
/// $ORLICZ_HY_OUT_DIR/<default name> when only the env var is set, else to
/// stdout) and returns one of the kExit* codes.
int run_cli(int argc, const char* const* argv);

/// Same, on an argument vector without the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace orlicz
