#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "exangulate/session.hpp"

namespace py = pybind11;
using namespace exangulate;

namespace {

py::object to_python(const session::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

struct PySession {
  session::Session s;

  ex::Obj obj(const std::string& name) const { return s.object(session::Token{name, {1, 1}}); }
};

PySession from_text(const std::string& text, const std::string& name, std::uint64_t seed) {
  return PySession{session::build_session(session::parse_input(text, name), seed)};
}

PySession from_file(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str(), path, seed);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "n-exangulated module categories and their localizations";

  py::register_exception<session::InputError>(m, "InputError", PyExc_ValueError);

  py::class_<PySession>(m, "Session")
      .def_static("load", &from_file, py::arg("path"), py::arg("seed") = 0x5eed, "Read an .exg file.")
      .def_static("parse", &from_text, py::arg("text"), py::arg("name") = "<input>", py::arg("seed") = 0x5eed)
      .def_property_readonly("prime", [](const PySession& p) { return p.s.cfg.prime; })
      .def_property_readonly("n", [](const PySession& p) { return p.s.category->n(); })
      .def_property_readonly("generators",
                             [](const PySession& p) {
                               std::vector<std::string> out;
                               for (int g = 0; g < p.s.cat().size(); ++g) out.push_back(p.s.cat().name(g));
                               return out;
                             })
      .def("dimension_vector",
           [](const PySession& p, const std::string& name) {
             const ex::Obj x = p.obj(name);
             if (x.size() != 1) throw std::invalid_argument("expected a single generator");
             return p.s.modules->generators()[x.front()].dims;
           })
      .def("hom_dim", [](const PySession& p, const std::string& x,
                         const std::string& y) { return p.s.cat().hom_dim(p.obj(x), p.obj(y)); })
      .def("ext_dim", [](const PySession& p, const std::string& c,
                         const std::string& a) { return p.s.category->E().dim(p.obj(c), p.obj(a)); })
      .def("quotient_hom_dim",
           [](const PySession& p, const std::string& x, const std::string& y) {
             return session::make_localization(p.s)->quotient()->cat().hom_dim(p.obj(x), p.obj(y));
           },
           "Dimension of Hom in C/[N].")
      .def("check",
           [](const PySession& p) {
             session::Outcome out;
             {
               py::gil_scoped_release nogil;
               out = session::run_check(p.s);
             }
             return to_python(out.json);
           },
           "Core axioms; the report as a dict.")
      .def("localize",
           [](const PySession& p) {
             session::Outcome out;
             {
               py::gil_scoped_release nogil;
               out = session::run_report(p.s);
             }
             return to_python(out.json);
           },
           "Full localization report as a dict; 'exit_code' matches the CLI.");
}
