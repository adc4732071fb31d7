#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "darmon/operations.hpp"
#include "darmon/selftest.hpp"

namespace py = pybind11;
using namespace darmon;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stark-Heegner and Heegner points with replayable certificates";
  set_complex_precision_bits(128);

  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
  static py::exception<PrecisionError> precision(m, "PrecisionError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      PyErr_SetString(precondition.ptr(), e.what());
    } catch (const PrecisionError& e) {
      PyErr_SetString(precision.ptr(), e.what());
    }
  });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("curve", &RunConfig::curve)
      .def_readwrite("curve_file", &RunConfig::curve_file)
      .def_readwrite("p", &RunConfig::p)
      .def_readwrite("disc", &RunConfig::disc)
      .def_readwrite("moments", &RunConfig::moments)
      .def_readwrite("sign", &RunConfig::sign)
      .def_readwrite("depth", &RunConfig::depth)
      .def_readwrite("character", &RunConfig::character)
      .def_readwrite("cache_dir", &RunConfig::cache_dir)
      .def_readwrite("no_cache", &RunConfig::no_cache)
      .def_readwrite("certificate", &RunConfig::certificate)
      .def_readwrite("bound", &RunConfig::bound)
      .def_readwrite("precision", &RunConfig::precision)
      .def_readwrite("reduced", &RunConfig::reduced)
      .def_readwrite("golden_dir", &RunConfig::golden_dir)
      .def_readwrite("only", &RunConfig::only);

  m.def("operations", &operation_names);
  m.def(
      "run",
      [](const std::string& name, const RunConfig& cfg) {
        RunOutcome r;
        {
          py::gil_scoped_release release;
          r = run_operation(name, cfg);
        }
        return py::make_tuple(dump_certificate(r.certificate), r.message, r.status);
      },
      py::arg("operation"), py::arg("config"), "run one operation; returns (certificate JSON, message, status)");
  m.def(
      "verify",
      [](const std::string& text) {
        Json j = Json::parse(text, nullptr, false);
        VerifyReport rep;
        if (j.is_discarded()) rep.add("valid_json", false);
        else rep = verify_certificate(j);
        return py::make_tuple(rep.ok, rep.kind, rep.checks);
      },
      py::arg("certificate"), "re-check the residuals of a certificate; returns (ok, kind, [(check, passed)])");
  m.def(
      "curve",
      [](const std::string& spec) {
        RunConfig c;
        c.curve = spec;
        CurveSpec e = resolve_curve(c);
        Invariants v = invariants(e);
        py::dict d;
        d["label"] = e.label;
        d["a_invariants"] = std::vector<std::string>{e.a1.get_str(), e.a2.get_str(), e.a3.get_str(),
                                                     e.a4.get_str(), e.a6.get_str()};
        d["conductor"] = e.conductor.get_str();
        d["discriminant"] = v.disc.get_str();
        d["j"] = v.j.get_str();
        return d;
      },
      py::arg("spec"), "curve from a label or a1,a2,a3,a4,a6");
  m.def(
      "ap",
      [](const std::string& spec, long l) {
        RunConfig c;
        c.curve = spec;
        return ap(resolve_curve(c), l);
      },
      py::arg("spec"), py::arg("l"));
  m.def("genus_x0", &genus_x0, py::arg("N"));
}
