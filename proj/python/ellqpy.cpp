#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ellq/checks.hpp"
#include "ellq/rmatrix.hpp"
#include "ellq/tableaux.hpp"

namespace py = pybind11;
using namespace ellq;

namespace {

EllipticParams params(cplx tau, cplx hbar, int J) {
    EllipticParams P;
    P.tau = tau;
    P.hbar = hbar;
    P.series_terms = J;
    validate(P);
    return P;
}

// nlohmann -> python by way of the json module; reports are small
py::object pyjson(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

RunConfig run_config(std::uint64_t seed, const std::string& cache_dir) {
    RunConfig c;
    c.seed = seed;
    c.cache_dir = cache_dir;
    return c;
}

} // namespace

PYBIND11_MODULE(ellqpy, m) {
    m.doc() = "elliptic R-matrix, q-characters and Q-operator checks";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);

    const cplx tau0{0.0, 0.8}, hbar0{0.23, 0.11};

    m.def("theta", [](cplx z, cplx tau, cplx hbar, int J) { return theta_reduced(z, params(tau, hbar, J)); },
          py::arg("z"), py::arg("tau") = tau0, py::arg("hbar") = hbar0, py::arg("J") = 60);
    m.def("theta_series", &theta_series, py::arg("z"), py::arg("tau") = tau0, py::arg("J") = 60);

    m.def("r_matrix",
          [](int N, cplx z, const CVec& lam, cplx tau, cplx hbar) {
              if (static_cast<int>(lam.size()) != N) throw ConfigError("lam needs N entries");
              return CMat(r_matrix(N, z, lam, params(tau, hbar, 60)).m);
          },
          py::arg("N"), py::arg("z"), py::arg("lam"), py::arg("tau") = tau0, py::arg("hbar") = hbar0);
    m.def("dybe_residual",
          [](int N, cplx z, cplx w, const CVec& lam, cplx tau, cplx hbar) {
              if (static_cast<int>(lam.size()) != N) throw ConfigError("lam needs N entries");
              return dybe_residual(N, z, w, lam, params(tau, hbar, 60));
          },
          py::arg("N"), py::arg("z"), py::arg("w"), py::arg("lam"), py::arg("tau") = tau0, py::arg("hbar") = hbar0);

    m.def("tableaux",
          [](const std::vector<int>& mu, int N) {
              std::vector<std::vector<std::vector<int>>> out;
              for (const auto& T : enumerate_tableaux(make_partition(mu, N), N)) out.push_back(T.rows);
              return out;
          },
          py::arg("mu"), py::arg("N"));
    m.def("qchar",
          [](const std::vector<int>& mu, int N, const std::string& a) {
              nlohmann::json j = qchar_evaluation(make_partition(mu, N), AffineShift(parse_rational(a)), N);
              return pyjson(j);
          },
          py::arg("mu"), py::arg("N"), py::arg("a") = "0");

    m.def("theta_report", [](int samples, std::uint64_t seed) {
        auto c = run_config(seed, ".ellq-cache");
        return pyjson(theta_report(c, samples).to_json(c));
    }, py::arg("samples") = 100, py::arg("seed") = 20240917);
    m.def("dybe_report", [](int N, int samples, std::uint64_t seed) {
        auto c = run_config(seed, ".ellq-cache");
        return pyjson(dybe_report(c, N, samples).to_json(c));
    }, py::arg("N") = 2, py::arg("samples") = 50, py::arg("seed") = 20240917);
    m.def("tq_report", [](int depth, int samples, std::uint64_t seed) {
        auto c = run_config(seed, ".ellq-cache");
        return pyjson(tq_report(c, depth, samples).to_json(c));
    }, py::arg("depth") = 3, py::arg("samples") = 5, py::arg("seed") = 20240917);
    m.def("all_reports", [](std::uint64_t seed, const std::string& cache_dir) {
        return pyjson(all_reports(run_config(seed, cache_dir), nullptr));
    }, py::arg("seed") = 20240917, py::arg("cache_dir") = ".ellq-cache");

    m.attr("__version__") = kToolVersion;
}
