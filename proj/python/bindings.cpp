#include "purity/cli.hpp"
#include "purity/fixtures.hpp"
#include "purity/graded_ring.hpp"
#include "purity/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace purity;

namespace {

SemistableComplex load_text(const std::string& source) {
    // a JSON object, or a fixture name
    auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && source[first] == '{') return load_complex(Json::parse(source));
    return load_complex(fixture_json(source));
}

}  // namespace

PYBIND11_MODULE(_purity, m) {
    m.doc() = "Exact hard Lefschetz, Hodge standard and weight spectral sequence checks";

    py::register_exception<LoadError>(m, "LoadError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command line front end; returns (exit_code, stdout, stderr).");

    m.def(
        "ring_report",
        [](int n, int q, std::optional<int> k) { return ring_report(n, q, k, ResourceLimits::from_env()).dump(); },
        py::arg("n"), py::arg("q"), py::arg("k") = py::none());

    m.def(
        "hodge_report",
        [](int n, int q, const std::string& divisor, bool skip_positivity) {
            return hodge_report(n, q, DivisorArg::parse(divisor), skip_positivity, ResourceLimits::from_env()).dump();
        },
        py::arg("n"), py::arg("q"), py::arg("divisor") = "omega", py::arg("skip_positivity") = false);

    m.def(
        "wss_report",
        [](const std::string& source, bool lemmas, bool zeta) {
            SemistableComplex cx = load_text(source);
            return wss_report(cx, source.size() < 64 ? source : std::string("<json>"), WssOptions{lemmas, zeta}).dump();
        },
        py::arg("source"), py::arg("lemmas") = false, py::arg("zeta") = false,
        "Report for a fixture name or a JSON description.");

    m.def("fixture", [](const std::string& name) { return fixture_json(name).dump(); }, py::arg("name"));
    m.def("fixture_names", &fixture_names);

    m.def(
        "gaussian_binomial", [](int n, int k, int q) { return gaussian_binomial(n, k, q); }, py::arg("n"), py::arg("k"),
        py::arg("q"));
    m.def(
        "betti_numbers", [](int n, int q) { return betti_numbers(VarietySpec::blown_up(n, FieldSpec::of_order(q))); },
        py::arg("n"), py::arg("q"));
}
