#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatsig/certificate.hpp"
#include "flatsig/constructions.hpp"
#include "flatsig/errors.hpp"
#include "flatsig/planner.hpp"

namespace py = pybind11;
using namespace flatsig;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Signatures of flat bundles over surfaces with boundary";

  static py::exception<Error> error(m, "FlatsigError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "value_set",
      [](const std::string& family, int genus, int boundary, int p, int q) {
        return value_set(ValueSetSpec{parse_family(family), p, q, genus, boundary});
      },
      py::arg("family"), py::arg("genus"), py::arg("boundary"), py::arg("p") = 1, py::arg("q") = 0);

  m.def(
      "construct",
      [](const std::string& mode, int genus, int boundary, int target, int p, int q, bool oracle,
         unsigned seed) {
        PlanTarget t{genus, boundary, target, parse_mode(mode), p, q};
        return certify(t, oracle, seed).to_json().dump();
      },
      py::arg("mode"), py::arg("genus"), py::arg("boundary"), py::arg("m"), py::arg("p") = 1,
      py::arg("q") = 0, py::arg("oracle") = false, py::arg("seed") = 0,
      "Certificate JSON for a planned realization.");

  m.def(
      "verify",
      [](const std::string& certificate, bool oracle, unsigned seed) {
        Certificate cert;
        try {
          cert = Certificate::from_json(nlohmann::json::parse(certificate));
        } catch (const std::exception& e) {
          return nlohmann::json({{"ok", false}, {"failures", {e.what()}}}).dump();
        }
        auto v = verify(cert, oracle, seed);
        nlohmann::json reports = nlohmann::json::array();
        for (const auto& r : v.reports) reports.push_back(to_json(r));
        nlohmann::json out = {{"ok", v.ok}, {"failures", v.failures}, {"invariants", reports},
                              {"oracle_skipped", v.oracle_skipped}};
        return out.dump();
      },
      py::arg("certificate"), py::arg("oracle") = false, py::arg("seed") = 0);

  m.def("catalog", [] {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& e : catalog()) out.emplace_back(e.kind, block_label(with_defaults({e.kind, {}, false})));
    return out;
  });
}
