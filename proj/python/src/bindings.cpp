#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orlicz/cli.hpp"
#include "orlicz/error.hpp"
#include "orlicz/io.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/verify.hpp"
#include "orlicz/young.hpp"

namespace py = pybind11;
using namespace orlicz;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orlicz-space Hausdorff-Young checks on compact homogeneous spaces";

  static py::exception<Error> error(m, "OrliczError");
  static py::exception<HypothesisFailed> hypothesis(m, "HypothesisFailed", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const HypothesisFailed& e) {
      hypothesis(e.what());
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<YoungFunction>(m, "YoungFunction")
      .def("__call__", [](const YoungFunction& f, double x) { return f(x); })
      .def("deriv", [](const YoungFunction& f, double x) { return f.deriv(x); })
      .def_readonly("label", &YoungFunction::label)
      .def("__repr__", [](const YoungFunction& f) { return "<YoungFunction " + f.label + ">"; });

  py::class_<ComplementaryPair>(m, "ComplementaryPair")
      .def_readonly("phi", &ComplementaryPair::phi)
      .def_readonly("psi", &ComplementaryPair::psi)
      .def_readonly("normalized", &ComplementaryPair::normalized)
      .def_readonly("scale", &ComplementaryPair::scale);

  m.def("young", &builtin_young, py::arg("spec"), "Built-in Young function from a spec string.");
  m.def("young_specs", &builtin_young_specs);
  m.def("conjugate", [](const YoungFunction& phi) { return conjugate(phi); }, py::arg("phi"));
  m.def("normalize_pair", &normalize_pair, py::arg("phi"), py::arg("tol") = 1e-10);
  m.def("pair", &pair_from_spec, py::arg("spec"), "Normalized pair for a Young spec.");
  m.def("young_inverse", &young_inverse, py::arg("phi"), py::arg("y"), py::arg("rel_tol") = 1e-15);

  m.def(
      "gauge",
      [](const YoungFunction& phi, std::vector<double> a, std::vector<double> w,
         std::optional<double> threshold) {
        if (a.size() != w.size()) throw BadParam("magnitudes and weights differ in length");
        return gauge(phi, a, w, threshold ? *threshold : phi(1.0)).value;
      },
      py::arg("phi"), py::arg("magnitudes"), py::arg("weights"), py::arg("threshold") = py::none(),
      "inf{lambda : sum w phi(a / lambda) <= threshold}; threshold defaults to phi(1).");

  m.def(
      "growth_fit",
      [](const YoungFunction& psi) {
        const auto fit = growth_fit(psi);
        return py::dict(py::arg("c0") = fit.c0, py::arg("p") = fit.p, py::arg("t_min") = fit.t_min,
                        py::arg("t_max") = fit.t_max);
      },
      py::arg("psi"));

  m.def("space_specs", &builtin_space_specs);
  m.def(
      "reps",
      [](const std::string& spec, int L) {
        const auto sp = make_space(spec);
        py::list out;
        for (const auto& r : sp->reps(L))
          out.append(py::dict(py::arg("rep") = sp->rep_name(r.label), py::arg("d") = r.d,
                              py::arg("k") = r.k));
        return out;
      },
      py::arg("space"), py::arg("L"));
  m.def(
      "random_coefficients_json",
      [](const std::string& spec, int L, std::uint64_t seed, const std::string& profile) {
        return coefficients_to_json(random_bandlimited(make_space(spec), L, seed, profile));
      },
      py::arg("space"), py::arg("L"), py::arg("seed") = 0, py::arg("profile") = "flat");
  m.def(
      "dual_lp_json",
      [](const std::string& coeffs, double p) { return dual_lp(coefficients_from_json(coeffs), p); },
      py::arg("coefficients"), py::arg("p"));
  m.def(
      "dual_orlicz_json",
      [](const YoungFunction& phi, const std::string& coeffs) {
        return dual_orlicz(phi, coefficients_from_json(coeffs)).value;
      },
      py::arg("phi"), py::arg("coefficients"));
  m.def(
      "hy_ratio_json",
      [](const std::string& pair, const std::string& coeffs, int oversample) {
        const auto sigma = coefficients_from_json(coeffs);
        return hy_ratio(pair_from_spec(pair), sigma, sigma.space()->quadrature(sigma.band(), oversample));
      },
      py::arg("pair"), py::arg("coefficients"), py::arg("oversample") = 4);

  m.def(
      "verify_json",
      [](const std::string& inequality, const std::string& space, const std::string& pair, int L, int n,
         std::uint64_t seed, double p, std::optional<int> oversample, std::optional<double> tol,
         bool stability) {
        VerifyOptions o;
        o.space = space;
        o.pair = pair;
        o.L = L;
        o.n = n;
        o.seed = seed;
        o.p = p;
        o.oversample = oversample;
        o.tol = tol;
        o.stability = stability;
        py::gil_scoped_release release;
        return report_to_json(run_verification(inequality, o));
      },
      py::arg("inequality"), py::arg("space") = "torus:1", py::arg("pair") = "power:1.5",
      py::arg("L") = 8, py::arg("n") = 200, py::arg("seed") = 0, py::arg("p") = 1.5,
      py::arg("oversample") = py::none(), py::arg("tol") = py::none(), py::arg("stability") = true);

  m.def(
      "ratio_search_json",
      [](const std::string& space, const std::string& pair, const std::string& support, int restarts,
         int max_sweeps, std::uint64_t seed) {
        RatioSearchOptions o;
        o.restarts = restarts;
        o.max_sweeps = max_sweeps;
        o.seed = seed;
        py::gil_scoped_release release;
        return ratio_result_to_json(ratio_search(space, pair, support, o));
      },
      py::arg("space"), py::arg("pair"), py::arg("support"), py::arg("restarts") = 50,
      py::arg("max_sweeps") = 200, py::arg("seed") = 0);

  m.def(
      "run_cli", [](const std::vector<std::string>& args) { return run_cli(args); }, py::arg("args"),
      "Runs the orlicz-hy command line and returns its exit code.");
}
