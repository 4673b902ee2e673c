#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hkr/center.hpp"
#include "hkr/cli.hpp"
#include "hkr/errors.hpp"
#include "hkr/evaluate.hpp"
#include "hkr/grpalg.hpp"
#include "hkr/kirby.hpp"
#include "hkr/uqsl2.hpp"

namespace py = pybind11;
using namespace hkr;

namespace {

struct Context {
  std::shared_ptr<CenterContext> ctx;
};

Context make(HopfPtr H) { return Context{std::make_shared<CenterContext>(make_context(std::move(H)))}; }

py::dict report_dict(const CenterContext& ctx, const AlgElem& z) {
  TraceReport R = classify_trace_element(ctx, z);
  py::dict d;
  std::vector<std::string> coords;
  for (const auto& c : R.coords) coords.push_back(c.str());
  d["coords"] = coords;
  d["in_TZ"] = R.in_TZ;
  d["in_T3"] = R.in_T3;
  d["in_T4"] = R.in_T4;
  d["X_z"] = R.X_z.str();
  d["C_plus"] = R.C_plus.str();
  d["C_minus"] = R.C_minus.str();
  return d;
}

}  // namespace

PYBIND11_MODULE(_hkr, m) {
  m.doc() = "Exact HKR invariants over finite-dimensional ribbon Hopf algebras";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<StructureError>(m, "StructureError", PyExc_RuntimeError);

  py::class_<CycNum>(m, "CycNum")
      .def_static("parse", &CycNum::parse, py::arg("p"), py::arg("text"))
      .def("__str__", &CycNum::str)
      .def("__repr__", [](const CycNum& x) { return "CycNum('" + x.str() + "')"; })
      .def("__eq__", [](const CycNum& a, const CycNum& b) { return a == b; })
      .def("__add__", [](const CycNum& a, const CycNum& b) { return a + b; })
      .def("__sub__", [](const CycNum& a, const CycNum& b) { return a - b; })
      .def("__mul__", [](const CycNum& a, const CycNum& b) { return a * b; })
      .def("__truediv__", [](const CycNum& a, const CycNum& b) { return a / b; })
      .def("inverse", &CycNum::inverse)
      .def("is_rational", &CycNum::is_rational)
      .def_property_readonly("p", &CycNum::p);

  py::class_<AlgElem>(m, "AlgElem").def("__eq__", [](const AlgElem& a, const AlgElem& b) { return a == b; });

  py::class_<HopfData, std::shared_ptr<HopfData>>(m, "HopfAlgebra")
      .def_readonly("name", &HopfData::name)
      .def_readonly("p", &HopfData::p)
      .def_readonly("dim", &HopfData::dim)
      .def("format", [](const HopfData& H, const AlgElem& a) { return format_elem(H, a); })
      .def("parse", [](const HopfData& H, const std::string& s) { return parse_elem(H, s); })
      .def("check_axioms", [](const HopfData& H, bool all) {
        AxiomOptions o;
        o.all = all;
        AxiomReport R = axiom_report(H, o);
        return py::make_tuple(R.all_pass(), R.str());
      }, py::arg("all") = false);

  auto to_ptr = [](HopfPtr H) { return std::const_pointer_cast<HopfData>(H); };
  m.def("uqsl2", [to_ptr](int p) { return to_ptr(build_uqsl2(p)); }, py::arg("p"));
  m.def("group_algebra", [to_ptr](const std::string& name, int p) { return to_ptr(group_algebra(named_group(name), p)); },
        py::arg("group"), py::arg("p") = 5);

  py::class_<Context>(m, "Context")
      .def(py::init([](std::shared_ptr<HopfData> H) { return make(H); }))
      .def_property_readonly("algebra", [](const Context& c) { return std::const_pointer_cast<HopfData>(c.ctx->H); })
      .def_property_readonly("dim_Z", [](const Context& c) { return c.ctx->center.dim_Z(); })
      .def_property_readonly("dim_Zhat", [](const Context& c) { return c.ctx->center.dim_Zhat(); })
      .def("element", [](const Context& c, const std::string& name) { return named_trace_element(*c.ctx, name); })
      .def("lam", [](const Context& c, const AlgElem& a) { return lambda(*c.ctx->H, a); })
      .def("counit", [](const Context& c, const AlgElem& a) { return counit(*c.ctx->H, a); })
      .def("J", [](const Context& c, const AlgElem& a) { return J(*c.ctx->H, a); })
      .def("class_equal", [](const Context& c, const AlgElem& a, const AlgElem& b) {
        return class_equal(c.ctx->center, a, b);
      })
      .def("classify", [](const Context& c, const AlgElem& z) { return report_dict(*c.ctx, z); })
      .def("rays", [](const Context& c) {
        std::vector<std::string> names;
        for (const auto& r : enumerate_TZ(*c.ctx)) names.push_back(r.name);
        return names;
      })
      .def("invariant", [](const Context& c, const Diagram& D, const AlgElem& z, int jobs) {
        return invariant(*c.ctx, D, z, std::nullopt, jobs);
      }, py::arg("diagram"), py::arg("z"), py::arg("jobs") = 1)
      .def("boundary_invariant", [](const Context& c, const Diagram& D, const AlgElem& z, int jobs) {
        return boundary_invariant(*c.ctx, D, z, jobs).value;
      }, py::arg("diagram"), py::arg("z"), py::arg("jobs") = 1);

  py::class_<Diagram>(m, "Diagram")
      .def_static("parse", &parse_diagram)
      .def_static("unknot", &unknot_diagram, py::arg("framing"))
      .def_static("hopf", &hopf_diagram)
      .def_static("lens", &lens_diagram, py::arg("n"))
      .def_static("s1xd3", &s1xd3_diagram)
      .def_static("cancel_pair", &cancel_pair_diagram)
      .def("__str__", &format_diagram)
      .def("__eq__", [](const Diagram& a, const Diagram& b) { return a == b; })
      .def("apply", [](const Diagram& D, const std::string& move) { return apply_move(D, parse_kirby_move(move)); })
      .def("linking_matrix", [](const Diagram& D) { return linking_data(D).matrix; })
      .def("signature", [](const Diagram& D) {
        LinkingData L = linking_data(D);
        return py::make_tuple(L.sigma_plus, L.sigma_minus, L.sigma_zero);
      })
      .def("presentation", [](const Diagram& D) { return format_presentation(extract_presentation(D)); });

  m.def("hom_count", [](const std::string& pres, const std::string& group) {
    return hom_count(parse_presentation(pres), named_group(group));
  }, py::arg("presentation"), py::arg("group"));

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
