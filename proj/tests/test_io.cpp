#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "orlicz/cli.hpp"
#include "orlicz/error.hpp"
#include "orlicz/io.hpp"

using namespace orlicz;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / "orlicz-hy-test-io";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("coefficient json round trip") {
  for (const char* sp : {"torus:2", "sphere2", "su2"}) {
    const auto sigma = random_bandlimited(make_space(sp), 3, 17);
    const auto text = coefficients_to_json(sigma);
    const auto back = coefficients_from_json(text);
    CHECK(back.band() == sigma.band());
    REQUIRE(back.blocks().size() == sigma.blocks().size());
    for (const auto& [label, blk] : sigma.blocks()) {
      const auto* other = back.find(label);
      REQUIRE(other != nullptr);
      CHECK((other->m - blk.m).norm() == 0.0);
    }
    CHECK(coefficients_to_json(back) == text);
  }
  CHECK_THROWS_AS(coefficients_from_json("{\"space\": \"su2\"}"), ParseError);
  CHECK_THROWS_AS(coefficients_from_json("not json"), ParseError);
}

TEST_CASE("report json schema") {
  VerifyOptions o;
  o.n = 3;
  o.L = 4;
  const auto r = verify_hy_lp(o);
  const auto j = nlohmann::json::parse(report_to_json(r));
  for (const char* key : {"inequality", "space", "pair", "L", "n", "seed", "tol", "samples", "aggregate",
                          "refinement", "verdict"})
    CHECK(j.contains(key));
  CHECK(j["samples"].size() == 3);
  CHECK(j["samples"][0].contains("margin"));
  CHECK(j["aggregate"].contains("max_margin"));
  CHECK(j["refinement"].contains("delta"));
  CHECK(j["verdict"] == "pass");
  CHECK(j["samples"][1]["lhs"].get<double>() == r.samples[1].lhs);
}

TEST_CASE("csv rows carry 17 significant digits") {
  VerificationReport r;
  r.samples.push_back({0.1, 1.0 / 3.0, 0.1 - 1.0 / 3.0, 0.3, 7});
  const auto csv = report_to_csv(r);
  CHECK(csv.rfind("index,seed,lhs,rhs,margin,ratio\n", 0) == 0);
  CHECK(csv.find("0,7,0.10000000000000001,0.33333333333333331,") != std::string::npos);
}

TEST_CASE("atomic write") {
  const auto dir = scratch_dir();
  const auto path = (dir / "nested" / "a.json").string();
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  CHECK(read_file(path) == "two");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  CHECK_THROWS_AS(write_file_atomic("/proc/orlicz-hy/x.json", "x"), IoError);
  CHECK_THROWS_AS(read_file((dir / "missing").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("cli exit codes") {
  const auto dir = scratch_dir();
  const auto out = (dir / "r.json").string();
  CHECK(run_cli({"list", "--out", out}) == kExitPass);
  const auto listing = read_file(out);
  for (const char* name : {"sphere2", "su2", "torus:1", "riordan:1.5"})
    CHECK(listing.find(name) != std::string::npos);
  CHECK(run_cli({"list", "--bogus"}) != kExitPass);
  CHECK(run_cli({}) != kExitPass);
  CHECK(run_cli({"verify", "nope"}) != kExitPass);
  CHECK(run_cli({"verify", "hy-lp", "--space", "sphere2", "--p", "1.5", "--L", "8", "-n", "200", "--seed",
                 "7", "--out", out}) == kExitPass);
  CHECK(nlohmann::json::parse(read_file(out))["verdict"] == "pass");
  CHECK(run_cli({"verify", "hoelder", "--pair", "power:1.5", "--space", "torus:1", "-n", "20", "--out", out}) ==
        kExitPass);
  CHECK(run_cli({"verify", "hy-orlicz", "--pair", "exp", "--out", out}) == kExitHypothesis);
  CHECK(run_cli({"fit-growth", "--young", "exp", "--out", out}) == kExitHypothesis);
  CHECK(run_cli({"verify", "parseval", "-n", "2", "--out", "/proc/orlicz-hy/x.json"}) == kExitIo);
  CHECK(run_cli({"verify", "parseval", "-n", "0"}) == kExitUsage);
  // An impossible tolerance makes the verdict fail.
  CHECK(run_cli({"verify", "parseval", "-n", "2", "--tol", "1e-300", "--out", out}) == kExitFail);
  fs::remove_all(dir);
}

TEST_CASE("cli ratio on quadratic and power pairs") {
  const auto dir = scratch_dir();
  const auto out = (dir / "ratio.json").string();
  CHECK(run_cli({"ratio", "--pair", "quadratic", "--support", "first:3", "--restarts", "2", "--out", out}) ==
        kExitPass);
  const auto q = nlohmann::json::parse(read_file(out));
  CHECK(std::abs(q["best_ratio"].get<double>() - 1.0) <= 1e-9);
  CHECK(run_cli({"ratio", "--pair", "power:1.5", "--space", "sphere2", "--support", "first:3", "--restarts",
                 "2", "--out", out}) == kExitPass);
  CHECK(nlohmann::json::parse(read_file(out))["best_ratio"].get<double>() <= 1.0 + 1e-8);
  fs::remove_all(dir);
}

TEST_CASE("config precedence and output directory") {
  const auto dir = scratch_dir();
  const auto cfg = (dir / "cfg.json").string();
  write_file_atomic(cfg, R"({"space": "su2", "L": 3, "n": 4, "seed": 9})");
  const auto out = (dir / "c.json").string();
  REQUIRE(run_cli({"verify", "parseval", "--config", cfg, "--L", "2", "--out", out}) == kExitPass);
  const auto j = nlohmann::json::parse(read_file(out));
  CHECK(j["space"] == "su2");
  CHECK(j["L"] == 2);  // the flag wins
  CHECK(j["n"] == 4);
  CHECK(j["seed"] == 9);

  write_file_atomic(cfg, R"({"nope": 1})");
  CHECK(run_cli({"verify", "parseval", "--config", cfg}) == kExitUsage);
  write_file_atomic(cfg, R"({"L": "three"})");
  CHECK(run_cli({"verify", "parseval", "--config", cfg}) == kExitUsage);

  const auto env_dir = dir / "env";
  setenv("ORLICZ_HY_OUT_DIR", env_dir.c_str(), 1);
  CHECK(run_cli({"verify", "parseval", "-n", "2", "--format", "csv"}) == kExitPass);
  unsetenv("ORLICZ_HY_OUT_DIR");
  CHECK(fs::exists(env_dir / "verify-parseval.csv"));
  fs::remove_all(dir);
}
