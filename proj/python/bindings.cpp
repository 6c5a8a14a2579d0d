#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "valx/session.hpp"

namespace py = pybind11;
using namespace valx;

namespace {

// Python-facing view of a session workspace; everything crosses as strings.
class PyWorkspace {
 public:
  explicit PyWorkspace(const std::string& text) { feed(text); }

  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> feed(const std::string& text) {
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> out;
    for (const auto& o : ws_.feed(text)) {
      if (o.command.empty()) continue;
      std::vector<std::pair<std::string, std::string>> lines;
      for (const auto& l : o.lines) lines.emplace_back(l.key, l.value);
      out.emplace_back(o.command, std::move(lines));
    }
    return out;
  }

  std::string element(const std::string& src) { return ws_.element(src).to_string(); }
  std::string value(const std::string& src) { return ws_.element(src).value().to_string(); }
  std::string minpoly(const std::string& src) {
    FieldElement e = ws_.element(src);
    return minimal_polynomial(e, e.level()->path().front()).to_string();
  }
  std::string kras_of(const std::string& src) { return kras(ws_.element(src)).to_string(); }
  std::vector<std::string> conj(const std::string& src) {
    std::vector<std::string> out;
    for (const auto& v : conjugate_differences(ws_.element(src)).values) out.push_back(v.to_string());
    return out;
  }
  std::string omega(const std::string& poly) { return nu_a_gamma(ws_.polynomial(poly), ws_.pair()).to_string(); }
  std::string delta_of(const std::string& poly) { return delta(ws_.polynomial(poly), ws_.pair()).to_string(); }
  std::string omega_q() { return omega_Q(ws_.pair()).to_string(); }
  int j() { return j_count(ws_.pair()); }

  py::dict ic() {
    ICReport r = ic_classify(ws_.pair());
    py::dict d;
    d["verdict"] = to_string(r.verdict);
    d["field"] = r.field;
    d["degree"] = r.degree;
    d["j"] = r.j ? py::cast(*r.j) : py::none();
    d["lower"] = r.lower;
    d["upper"] = r.upper;
    d["rule"] = r.rule;
    return d;
  }

  py::dict report() {
    StructureReport r = structure_report(ws_.pair());
    py::dict d;
    d["kind"] = to_string(r.kind);
    d["omegaQ"] = r.omega_q.to_string();
    d["valuegroup"] = r.value_group_text;
    d["residuefield"] = r.residue_field;
    d["index"] = r.index_e ? py::cast(r.index_e->get_str()) : py::none();
    return d;
  }

 private:
  Workspace ws_;
};

}  // namespace

PYBIND11_MODULE(_valx, m) {
  m.doc() = "Valuations on K(x) from pairs of definition";

  static py::exception<Error> error(m, "ValxError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(py::str(std::string(to_string(e.kind())) + ": " + e.what()));
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def(
      "run",
      [](const std::string& text, bool json) {
        RunResult r = run_session(text, json);
        return py::make_tuple(r.exit_code, r.out, r.err);
      },
      py::arg("text"), py::arg("json") = false, "Run a session; returns (exit_code, stdout, stderr).");

  m.def("ostrowski_defect", &ostrowski_defect, py::arg("n"), py::arg("e"), py::arg("f"), py::arg("p"));

  py::class_<PyWorkspace>(m, "Workspace")
      .def(py::init<const std::string&>(), py::arg("text") = "")
      .def("feed", &PyWorkspace::feed)
      .def("element", &PyWorkspace::element)
      .def("value", &PyWorkspace::value)
      .def("minpoly", &PyWorkspace::minpoly)
      .def("kras", &PyWorkspace::kras_of)
      .def("conj", &PyWorkspace::conj)
      .def("omega", &PyWorkspace::omega)
      .def("delta", &PyWorkspace::delta_of)
      .def("omega_q", &PyWorkspace::omega_q)
      .def("j_count", &PyWorkspace::j)
      .def("ic", &PyWorkspace::ic)
      .def("report", &PyWorkspace::report);
}
