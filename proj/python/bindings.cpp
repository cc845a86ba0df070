#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loewner/cli.hpp"
#include "loewner/classify.hpp"
#include "loewner/error.hpp"
#include "loewner/measures.hpp"
#include "loewner/processes.hpp"
#include "loewner/serialize.hpp"
#include "loewner/transforms.hpp"

namespace py = pybind11;
using namespace loewner;

namespace {

CertifyConfig config_from(const std::string& text) {
  CertifyConfig cfg;
  if (!text.empty()) cfg = config_from_json(parse_json_text(text));
  cfg.validate();
  return cfg;
}

std::string dumps(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_loewner, m) {
  m.doc() = "Operator monotone and operator convex function toolkit";

  static py::exception<Error> error(m, "LoewnerError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Interval>(m, "Interval")
      .def(py::init<double, double, bool, bool>(), py::arg("lo"), py::arg("hi"), py::arg("lo_closed") = false,
           py::arg("hi_closed") = false)
      .def_property_readonly("lo", &Interval::lo)
      .def_property_readonly("hi", &Interval::hi)
      .def_property_readonly("lo_closed", &Interval::lo_closed)
      .def_property_readonly("hi_closed", &Interval::hi_closed)
      .def("__repr__", &Interval::describe);

  py::class_<FunctionExpr>(m, "Function")
      .def_static("constant", &FunctionExpr::constant, py::arg("c"), py::arg("on") = std::nullopt)
      .def_static("affine", &FunctionExpr::affine, py::arg("a"), py::arg("b"), py::arg("on") = std::nullopt)
      .def_static("identity", &FunctionExpr::identity, py::arg("on") = std::nullopt)
      .def_static("power", &FunctionExpr::power, py::arg("alpha"), py::arg("on") = std::nullopt)
      .def_static("reciprocal", &FunctionExpr::reciprocal, py::arg("on") = std::nullopt)
      .def_static("catalog", &FunctionExpr::catalog, py::arg("name"), py::arg("params") = FunctionExpr::Params{},
                  py::arg("on") = std::nullopt)
      .def_static("quotient", &FunctionExpr::quotient, py::arg("num"), py::arg("den"), py::arg("on") = std::nullopt)
      .def_static("from_json", [](const std::string& text) { return function_from_json(parse_json_text(text)); })
      .def("to_json", [](const FunctionExpr& f) { return dumps(to_json(f)); })
      .def_property_readonly("domain", &FunctionExpr::domain)
      .def("describe", &FunctionExpr::describe)
      .def("__call__", [](const FunctionExpr& f, double x) { return eval_real(f, x); })
      .def("complex", [](const FunctionExpr& f, std::complex<double> z) { return eval_complex(f, z); })
      .def("deriv", [](const FunctionExpr& f, double x) { return eval_deriv(f, x); })
      .def("__repr__", [](const FunctionExpr& f) { return "<Function " + f.describe() + ">"; });

  m.def("diff_quotient", &diff_quotient, py::arg("f"), py::arg("x0"));
  m.def("neg_reciprocal", &neg_reciprocal, py::arg("f"));
  m.def("neg_reciprocal_of_negative", &neg_reciprocal_of_negative, py::arg("f"));
  m.def("mul_linear", &mul_linear, py::arg("f"), py::arg("x0"), py::arg("c"));
  m.def("choose_shift", &choose_shift, py::arg("f"), py::arg("x0"), py::arg("interval"));
  m.def(
      "compose",
      [](const FunctionExpr& phi, const FunctionExpr& f, const std::string& mode, const std::string& cfg) {
        return compose_checked(phi, f, compose_mode_from_string(mode), config_from(cfg), false).expr;
      },
      py::arg("phi"), py::arg("f"), py::arg("mode") = "strong", py::arg("config") = "");

  m.def(
      "_check",
      [](const std::string& property, const FunctionExpr& f, std::optional<Interval> on, const std::string& cfg) {
        const CertifyConfig c = config_from(cfg);
        const Interval i = on.value_or(f.domain());
        switch (property_from_string(property)) {
          case Property::OM: return dumps(to_json(check_monotone(f, i, c)));
          case Property::OC: return dumps(to_json(check_convex(f, i, c)));
          case Property::SOC: return dumps(to_json(check_strong(f, i, c)));
          case Property::LoewnerOrderN: return dumps(to_json(check_loewner_sets(f, i, c)));
          case Property::HalfPlane: return dumps(to_json(check_halfplane(f, c.halfplane, c.sampling.window)));
        }
        return std::string("{}");
      },
      py::arg("property"), py::arg("f"), py::arg("on") = std::nullopt, py::arg("config") = "");
  m.def(
      "_classify",
      [](const FunctionExpr& f, std::optional<Interval> on, const std::string& cfg) {
        return dumps(to_json(classify_all(f, on.value_or(f.domain()), config_from(cfg))));
      },
      py::arg("f"), py::arg("on") = std::nullopt, py::arg("config") = "");
  m.def(
      "_replay",
      [](const FunctionExpr& f, const std::string& witness) {
        return replay_witness(f, witness_from_json(parse_json_text(witness)));
      },
      py::arg("f"), py::arg("witness"));

  m.def(
      "_pipeline",
      [](const std::string& process, const FunctionExpr& f0, const std::vector<double>& points, int steps,
         const std::vector<std::optional<double>>& shifts, bool certify, const std::string& cfg) {
        PipelineOptions o;
        o.certify = certify;
        o.cfg = config_from(cfg);
        PipelineRun run;
        if (process == "main") {
          run = main_cycle(f0, points, steps, o);
        } else if (process == "star") {
          run = star_process(f0, points, steps, o);
        } else if (process == "backward") {
          run = backward_process(f0, points, shifts, steps, o);
        } else {
          fail(ErrorKind::InvalidArgument, "unknown process '" + process + "'");
        }
        std::vector<FunctionExpr> stages;
        for (const auto& s : run.stages) stages.push_back(s.f);
        return std::make_pair(dumps(to_json(run)), stages);
      },
      py::arg("process"), py::arg("f0"), py::arg("points"), py::arg("steps"), py::arg("shifts"), py::arg("certify"),
      py::arg("config"));
  m.def("rational_degree", &rational_degree, py::arg("f"));

  m.def(
      "_measure_function",
      [](const std::string& rep) {
        const Json j = parse_json_text(rep);
        const std::string type = j.value("type", "om");
        if (type == "om") return FunctionExpr::measure_om(om_rep_from_json(j));
        if (type == "soc") return FunctionExpr::measure_soc(soc_rep_from_json(j));
        if (type == "oc") return FunctionExpr::measure_oc(oc_rep_from_json(j));
        fail(ErrorKind::ParseError, "unknown representation type '" + type + "'");
      },
      py::arg("rep"));
  m.def(
      "_om_to_soc", [](const std::string& rep, double x0) { return dumps(to_json(om_to_soc(om_rep_from_json(parse_json_text(rep)), x0))); },
      py::arg("rep"), py::arg("x0"));
  m.def(
      "_soc_to_om", [](const std::string& rep, double x1) { return dumps(to_json(soc_to_om(soc_rep_from_json(parse_json_text(rep)), x1))); },
      py::arg("rep"), py::arg("x1"));
  m.def(
      "_substitute_square", [](const std::string& rep) { return dumps(to_json(substitute_square(oc_rep_from_json(parse_json_text(rep))))); },
      py::arg("rep"));
  m.def(
      "recover_atom_weight",
      [](const FunctionExpr& f, double r, double lo, double hi, std::vector<double> eps, int side) {
        const PoissonRecovery pr = recover_atom_weight(f, r, lo, hi, eps, side);
        return py::dict(py::arg("weight") = pr.weight, py::arg("eps") = pr.eps, py::arg("raw") = pr.raw);
      },
      py::arg("f"), py::arg("r"), py::arg("lo"), py::arg("hi"), py::arg("eps") = std::vector<double>{1e-2, 1e-3, 1e-4},
      py::arg("side") = 1);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "loewner");
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        py::gil_scoped_release release;
        return run_cli(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"));
}
