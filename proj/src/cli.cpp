#include "orlicz/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlicz/error.hpp"
#include "orlicz/io.hpp"
#include "orlicz/verify.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

namespace {

const std::vector<std::string> kInequalities = {"embeddings", "hoelder", "hy-lp", "hy-orlicz",
                                                "parseval"};

class UsageError : public Error {
public:
  using Error::Error;
};

struct Output {
  std::string name;  // default file stem
  std::string json;
  std::string csv;
};

// Options that may come from the config file, keyed by their long name.
struct Registry {
  std::map<std::string, CLI::Option*> opts;
  std::map<std::string, std::function<void(const nlohmann::json&)>> setters;
};

template <class T>
T config_value(const std::string& key, const nlohmann::json& v) {
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw UsageError("config key '" + key + "' must be a boolean");
      return v.get<bool>();
    } else {
      if (!v.is_number()) throw UsageError("config key '" + key + "' must be a number");
      if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw UsageError("config key '" + key + "' must be an integer");
      }
      return v.get<T>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("config key '" + key + "': " + ex.what());
  }
}

template <class T>
void add(CLI::App* app, Registry& reg, const std::string& flags, const std::string& key, T& target,
         const std::string& help) {
  reg.opts[key] = app->add_option(flags, target, help)->capture_default_str();
  reg.setters[key] = [&target, key](const nlohmann::json& v) { target = config_value<T>(key, v); };
}

template <class T>
void add_optional(CLI::App* app, Registry& reg, const std::string& flags, const std::string& key,
                  std::optional<T>& target, const std::string& help) {
  reg.opts[key] = app->add_option(flags, target, help);
  reg.setters[key] = [&target, key](const nlohmann::json& v) { target = config_value<T>(key, v); };
}

void apply_config(const std::string& path, Registry& reg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("config " + path + " is not valid JSON: " + ex.what());
  }
  if (!j.is_object()) throw UsageError("config " + path + " must be a flat JSON object");
  for (const auto& [key, value] : j.items()) {
    const auto it = reg.setters.find(key);
    if (it == reg.setters.end()) throw UsageError("unknown config key '" + key + "'");
    if (value.is_object() || value.is_array())
      throw UsageError("config key '" + key + "' must be a scalar");
    if (reg.opts.at(key)->count() > 0) continue;  // the flag wins
    it->second(value);
  }
}

void validate(const RunConfig& c) {
  if (c.L < 1) throw UsageError("--L must be positive");
  if (c.n < 1) throw UsageError("-n must be positive");
  if (c.oversample && *c.oversample < 1) throw UsageError("--oversample must be positive");
  if (c.tol && !(*c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.restarts < 1) throw UsageError("--restarts must be positive");
  if (c.max_sweeps < 1) throw UsageError("--max-sweeps must be positive");
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
}

std::string listing() {
  auto section = [](const std::string& title, std::vector<std::string> items) {
    std::sort(items.begin(), items.end());
    std::string s = title + ":\n";
    for (const auto& i : items) s += "  " + i + "\n";
    return s;
  };
  return section("spaces", builtin_space_specs()) + section("young", builtin_young_specs()) +
         section("inequalities", kInequalities);
}

VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions o;
  o.space = c.space;
  o.pair = c.pair;
  o.L = c.L;
  o.n = c.n;
  o.seed = c.seed;
  o.oversample = c.oversample;
  o.tol = c.tol;
  o.p = c.p;
  o.profile = c.profile;
  o.stability = c.stability;
  return o;
}

void emit(const RunConfig& c, const Output& doc) {
  const std::string& body = c.format == "csv" ? doc.csv : doc.json;
  std::string path = c.out;
  if (path.empty()) {
    if (const char* dir = std::getenv("ORLICZ_HY_OUT_DIR"); dir && *dir)
      path = (std::filesystem::path(dir) / (doc.name + "." + c.format)).string();
  }
  if (path.empty()) {
    std::cout << body << std::flush;
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  write_file_atomic(path, body);
}

int run(const RunConfig& c) {
  if (c.command == "list") {
    const auto text = listing();
    emit(c, {"list", text, text});
    return kExitPass;
  }
  if (c.command == "verify") {
    const auto report = run_verification(c.inequality, verify_options(c));
    emit(c, {"verify-" + c.inequality, report_to_json(report), report_to_csv(report)});
    std::fprintf(stderr, "%s on %s: %s (max margin %.3g, tol %.1g)\n", c.inequality.c_str(),
                 report.space.c_str(), report.verdict ? "pass" : "fail", report.max_margin, report.tol);
    return report.verdict ? kExitPass : kExitFail;
  }
  if (c.command == "ratio") {
    RatioSearchOptions o;
    o.restarts = c.restarts;
    o.max_sweeps = c.max_sweeps;
    o.seed = c.seed;
    if (c.oversample) o.oversample = *c.oversample;
    const auto res = ratio_search(c.space, c.pair, c.support, o);
    emit(c, {"ratio", ratio_result_to_json(res), ratio_result_to_csv(res)});
    std::fprintf(stderr, "best ratio %.10g, a priori bound %.10g\n", res.best_ratio, res.bound);
    return kExitPass;
  }
  if (c.command == "fit-growth") {
    YoungFunction psi;
    if (!c.young.empty()) {
      psi = builtin_young(c.young);
    } else {
      psi = pair_from_spec(c.pair).psi;
      psi.label = "conj(" + c.pair + ")";
    }
    GrowthFit fit;
    try {
      fit = growth_fit(psi);
    } catch (const NoFit& ex) {
      throw HypothesisFailed(ex.what());
    }
    emit(c, {"fit-growth", growth_fit_to_json(psi.label, fit), growth_fit_to_csv(psi.label, fit)});
    return kExitPass;
  }
  throw UsageError("unknown command " + c.command);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::string config_path;
  CLI::App app{"Hausdorff-Young inequalities in Orlicz spaces on compact homogeneous spaces",
               "orlicz-hy"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::vector<Registry> regs;
  regs.reserve(4);
  auto common = [&](CLI::App* sub) -> Registry& {
    regs.emplace_back();
    auto& reg = regs.back();
    add(sub, reg, "--out", "out", cfg.out, "Output file");
    add(sub, reg, "--format", "format", cfg.format, "json or csv");
    sub->add_option("--config", config_path, "Flat JSON file of option defaults");
    return reg;
  };
  auto sampling = [&](CLI::App* sub, Registry& reg) {
    add(sub, reg, "--space", "space", cfg.space, "torus:<dim>, sphere2 or su2");
    add(sub, reg, "--pair", "pair", cfg.pair, "Young function spec for Phi");
    add(sub, reg, "--L", "L", cfg.L, "Band limit");
    add(sub, reg, "--seed", "seed", cfg.seed, "Base seed");
    add_optional(sub, reg, "--oversample", "oversample", cfg.oversample, "Quadrature oversampling");
  };

  auto* list = app.add_subcommand("list", "List built-in spaces, gauges and inequalities");
  common(list);

  auto* verify = app.add_subcommand("verify", "Check an inequality on random samples");
  {
    auto& reg = common(verify);
    sampling(verify, reg);
    verify->add_option("inequality", cfg.inequality, "Inequality id")
        ->required()
        ->check(CLI::IsMember(kInequalities));
    add(verify, reg, "--p", "p", cfg.p, "Exponent for hy-lp");
    add(verify, reg, "-n,--samples", "n", cfg.n, "Number of samples");
    add_optional(verify, reg, "--tol", "tol", cfg.tol, "Violation tolerance");
    add(verify, reg, "--profile", "profile", cfg.profile, "flat or decay:s");
    reg.opts["stability"] = verify->add_flag("!--no-stability", cfg.stability,
                                             "Skip the hy-orlicz band doubling run");
    reg.setters["stability"] = [&](const nlohmann::json& v) {
      cfg.stability = config_value<bool>("stability", v);
    };
  }

  auto* ratio = app.add_subcommand("ratio", "Search for the largest Orlicz Hausdorff-Young ratio");
  {
    auto& reg = common(ratio);
    sampling(ratio, reg);
    add(ratio, reg, "--support", "support", cfg.support, "first:N, band:L or rep names joined by ;");
    add(ratio, reg, "--restarts", "restarts", cfg.restarts, "Random restarts");
    add(ratio, reg, "--max-sweeps", "max_sweeps", cfg.max_sweeps, "Coordinate sweeps per restart");
  }

  auto* fit = app.add_subcommand("fit-growth", "Fit Psi'(t) <= c0 t^p");
  {
    auto& reg = common(fit);
    add(fit, reg, "--pair", "pair", cfg.pair, "Fit the conjugate of this normalized gauge");
    add(fit, reg, "--young", "young", cfg.young, "Fit this gauge's derivative directly");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::size_t idx = 0;
  for (auto* sub : {list, verify, ratio, fit}) {
    if (sub->parsed()) {
      cfg.command = sub->get_name();
      break;
    }
    ++idx;
  }

  try {
    if (!config_path.empty()) apply_config(config_path, regs.at(idx));
    validate(cfg);
    return run(cfg);
  } catch (const HypothesisFailed& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitHypothesis;
  } catch (const IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitIo;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  } catch (const BadParam& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  } catch (const BadExponent& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace orlicz
