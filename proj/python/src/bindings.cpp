#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biiso/bcl.hpp"
#include "biiso/io.hpp"
#include "biiso/lattice.hpp"
#include "biiso/model.hpp"
#include "biiso/suite.hpp"

namespace py = pybind11;
using namespace biiso;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
}

py::dict model_report(const OpSymbol& theta, int n, int k, int kmax) {
  const Model m = build_model_biisometry(theta, n, k);
  const BiIsometryResiduals r = validate(m.w);
  const int kk = std::min(kmax, n - 2);
  const auto cf = characteristic_function(m.w, kk);
  const auto ex = theta.series(kk);
  double rt = 0.0;
  for (int i = 0; i <= kk; ++i) rt = std::max(rt, op_norm(cf[i] - ex[i]));
  py::dict d;
  d["window"] = m.w.space().size();
  d["interior"] = m.w.interior.size();
  d["isometry0"] = r.isometry0;
  d["isometry1"] = r.isometry1;
  d["commutation"] = r.commutation;
  d["roundtrip_error"] = rt;
  d["w1_unitary"] = w1_unitary_test(m.w).holds;
  d["doubly_commuting"] = doubly_commuting_test(m.w).holds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "bi-isometry models and invariants";
  m.attr("__version__") = kVersion;

  // later registrations are tried first
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<OpSymbol>(m, "Symbol")
      .def_static("constant", &OpSymbol::constant, py::arg("c"))
      .def_static("polynomial", &OpSymbol::polynomial, py::arg("coeffs"))
      .def_static("from_json", [](const std::string& s) { return symbol_from_json(parse(s)); })
      .def_static("l2_example", &section6_symbol, py::arg("n"), py::arg("phi_zero") = cd(-0.5, 0.0))
      .def("to_json", [](const OpSymbol& s) { return symbol_to_json(s).dump(); })
      .def_property_readonly("dim", &OpSymbol::dim)
      .def("__call__", &OpSymbol::eval, py::arg("z"))
      .def("series", &OpSymbol::series, py::arg("n"));

  m.def("model_report", &model_report, py::arg("theta"), py::arg("n") = 12, py::arg("k") = 32,
        py::arg("kmax") = 6);
  m.def("is_inner", [](const OpSymbol& s, int k) { return is_inner_sampled(s, k).inner; }, py::arg("theta"),
        py::arg("k") = 64);

  py::class_<BCLPair>(m, "Pair")
      .def(py::init(&make_bcl), py::arg("u"), py::arg("p"))
      .def_static("from_json", [](const std::string& s) { return bcl_from_json(parse(s)); })
      .def("to_json", [](const BCLPair& b) { return bcl_to_json(b).dump(); })
      .def_readonly("u", &BCLPair::u)
      .def_readonly("p", &BCLPair::p)
      .def_readonly("dim_e", &BCLPair::dim_e)
      .def_readonly("dim_f", &BCLPair::dim_f)
      .def_readonly("truncated", &BCLPair::truncated)
      .def_property_readonly("dim", &BCLPair::dim);

  m.def("pair_from_symbol", [](const OpSymbol& t, int n, int k) { return bcl_from_symbol(t, n, k); },
        py::arg("theta"), py::arg("n") = 12, py::arg("k") = 32);
  m.def("pair_roundtrip", [](const BCLPair& b, int n) { return bcl_from_biisometry(biisometry_from_bcl(b, n)); },
        py::arg("pair"), py::arg("n") = 8);
  m.def(
      "pair_equivalence",
      [](const BCLPair& a, const BCLPair& b, int words) {
        const EquivalenceResult r = pair_equivalence(a, b, words);
        return py::make_tuple(to_string(r.verdict), r.residual);
      },
      py::arg("a"), py::arg("b"), py::arg("word_len") = 8);

  py::class_<ZSet>(m, "ZSet")
      .def_static("from_json", [](const std::string& s) { return zset_from_json(parse(s)); })
      .def_static("multiples", &ZSet::multiples, py::arg("m"), py::arg("r") = 0)
      .def_static("at_least", &ZSet::at_least)
      .def_static("below", &ZSet::below)
      .def_static("finite", &ZSet::finite)
      .def("to_json", [](const ZSet& a) { return zset_to_json(a).dump(); })
      .def("__contains__", &ZSet::contains)
      .def("translate", [](const ZSet& a, long n) { return translate(a, n); })
      .def("__eq__", [](const ZSet& a, const ZSet& b) { return same_set(a, b); });

  m.def("minimal_period", &minimal_period);
  m.def("translate_equivalent", &translate_equivalent);
  m.def("is_irreducible", &is_irreducible);
  m.def("staircase_set", [](const ZSet& a) { return staircase_to_zset(zset_to_staircase(a)); });
  m.def("cyclic_weighted_shift", &cyclic_weighted_shift, py::arg("n"), py::arg("zeta"));
  m.def(
      "fiber",
      [](const ZSet& a, cd zeta) {
        const FiberPair f = direct_integral_factor(a, zeta);
        return py::make_tuple(f.u, f.p);
      },
      py::arg("a"), py::arg("zeta"));
  m.def("commutant_dimension", &commutant_dimension, py::arg("u"), py::arg("p"), py::arg("tol") = 1e-9);

  m.def("paper_examples", [](unsigned seed) {
    py::list out;
    auto add = [&](const std::vector<Check>& checks) {
      for (const Check& c : checks) {
        py::dict d;
        d["name"] = c.name;
        d["pass"] = c.pass;
        d["value"] = c.value;
        out.append(d);
      }
    };
    add(section6_checks());
    add(section8_checks(seed));
    return out;
  }, py::arg("seed") = 42);
}
