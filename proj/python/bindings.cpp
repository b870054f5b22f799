#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zloc/bounds.hpp"
#include "zloc/localization.hpp"
#include "zloc/tensor.hpp"
#include "zloc/zeig.hpp"

namespace py = pybind11;
using namespace zloc;

namespace {

std::vector<std::pair<double, double>> as_pairs(const IntervalSet& s) {
  std::vector<std::pair<double, double>> out;
  for (const auto& iv : s.intervals()) out.emplace_back(iv.lo, iv.hi);
  return out;
}

IntervalSet from_pairs(const std::vector<std::pair<double, double>>& parts) {
  std::vector<Interval> ivs;
  for (const auto& [lo, hi] : parts) ivs.push_back({lo, hi});
  return IntervalSet(std::move(ivs));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Z-eigenvalue localization sets and Z-spectral radius bounds for real tensors";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<InternalInconsistency>(m, "InternalInconsistency", PyExc_RuntimeError);

  py::class_<Tensor>(m, "Tensor")
      .def(py::init<std::size_t, std::size_t>(), py::arg("order"), py::arg("dim"))
      .def(py::init<std::size_t, std::size_t, std::vector<double>>(), py::arg("order"),
           py::arg("dim"), py::arg("entries"))
      .def_property_readonly("order", &Tensor::order)
      .def_property_readonly("dim", &Tensor::dim)
      .def_property_readonly("entries", [](const Tensor& t) {
        return std::vector<double>(t.entries().begin(), t.entries().end());
      })
      .def("__getitem__", [](const Tensor& t, const std::vector<std::size_t>& idx) { return t(idx); })
      .def("__setitem__", [](Tensor& t, const std::vector<std::size_t>& idx, double v) { t.set(idx, v); })
      .def("__eq__", [](const Tensor& a, const Tensor& b) { return a == b; })
      .def("__repr__", [](const Tensor& t) {
        return "<Tensor m=" + std::to_string(t.order()) + " n=" + std::to_string(t.dim()) + ">";
      });

  m.def("parse_tensor", py::overload_cast<const std::string&>(&parse_tensor), py::arg("text"));
  m.def("load_tensor", &load_tensor, py::arg("path"));
  m.def("serialize_tensor", &serialize_tensor);
  m.def("apply", [](const Tensor& a, const std::vector<double>& x) { return contract(a, x); });
  m.def("polyval", [](const Tensor& a, const std::vector<double>& x) { return polyval(a, x); });
  m.def("gradient", [](const Tensor& a, const std::vector<double>& x) { return gradient(a, x); });
  m.def("is_nonnegative", &is_nonnegative);
  m.def("is_symmetric", &is_symmetric, py::arg("tensor"), py::arg("tol") = 0.0);
  m.def("is_weakly_symmetric", &is_weakly_symmetric, py::arg("tensor"), py::arg("trials") = 20,
        py::arg("tol") = 1e-9, py::arg("seed") = kDefaultSeed);
  m.def("symmetrized", &symmetrized);

  py::class_<RowAggregates>(m, "RowAggregates")
      .def_readonly("row", &RowAggregates::row)
      .def("with_index", &RowAggregates::with_index)
      .def("without_index", &RowAggregates::without_index);
  m.def("row_aggregates", &row_aggregates);

  py::class_<IntervalSet>(m, "IntervalSet")
      .def(py::init(&from_pairs), py::arg("intervals"))
      .def_property_readonly("intervals", &as_pairs)
      .def("__eq__", [](const IntervalSet& a, const IntervalSet& b) { return a == b; })
      .def("__repr__", &IntervalSet::to_string);
  m.def("interval_union", &interval_union);
  m.def("interval_intersect", &interval_intersect);
  m.def("interval_sup", &interval_sup);
  m.def("interval_contains", &interval_contains, py::arg("set"), py::arg("t"), py::arg("slack") = 0.0);
  m.def("quadratic_region", &quadratic_region, py::arg("a"), py::arg("b"), py::arg("c"));

  py::class_<SetReport>(m, "SetReport")
      .def_property_readonly("name", &SetReport::name)
      .def_readonly("set", &SetReport::set)
      .def_readonly("radius", &SetReport::radius)
      .def_readonly("per_index", &SetReport::per_index);
  m.def("set_K", &set_K);
  m.def("set_L", &set_L);
  m.def("set_Psi", &set_Psi);
  m.def("set_Omega", &set_Omega);
  m.def("all_sets", [](const Tensor& a) {
    const AllSets s = all_sets(a);
    py::dict d;
    d["K"] = s.K;
    d["L"] = s.L;
    d["Psi"] = s.Psi;
    d["Omega"] = s.Omega;
    return d;
  });
  m.def("inclusion_chain_holds",
        [](const Tensor& a, double slack) { return inclusion_chain_check(a, slack).holds; },
        py::arg("tensor"), py::arg("slack") = kChainSlack);

  py::class_<BoundValue>(m, "BoundValue")
      .def_readonly("value", &BoundValue::value)
      .def_readonly("row", &BoundValue::row)
      .def_readonly("column", &BoundValue::column);
  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("omega_max", [](const BoundReport& r) { return r.omega.value; })
      .def_property_readonly("omega_strict", [](const BoundReport& r) { return r.omega.strict; })
      .def_property_readonly("omega_quadratic", [](const BoundReport& r) { return r.omega.quad; })
      .def_readonly("zhao", &BoundReport::zhao)
      .def_readonly("wang", &BoundReport::wang)
      .def_readonly("maxR", &BoundReport::maxR)
      .def_readonly("nonnegative", &BoundReport::nonnegative)
      .def_property_readonly("weakly_symmetric",
                             [](const BoundReport& r) { return r.weak_symmetry.weakly_symmetric; })
      .def("applicable", &BoundReport::applicable)
      .def("values", [](const BoundReport& r) {
        return std::vector<double>{r.omega.value.value, r.zhao.value, r.wang.value, r.maxR.value};
      });
  m.def("bound_report", &bound_report, py::arg("tensor"), py::arg("seed") = kDefaultSeed);

  py::class_<ZEigenPair>(m, "ZEigenPair")
      .def_readonly("lam", &ZEigenPair::lambda)
      .def_readonly("x", &ZEigenPair::x)
      .def_readonly("residual", &ZEigenPair::residual)
      .def_readonly("source", &ZEigenPair::source)
      .def_readonly("multiplicity", &ZEigenPair::multiplicity)
      .def("__repr__", [](const ZEigenPair& p) {
        return "<ZEigenPair lambda=" + std::to_string(p.lambda) + " source=" + p.source + ">";
      });
  m.def("circle_solve", &circle_solve, py::arg("tensor"), py::arg("samples") = 7200);
  m.def(
      "sshopm",
      [](const Tensor& a, int starts, int max_iter, double tol, std::uint64_t seed) {
        OracleConfig cfg;
        cfg.starts = starts;
        cfg.max_iter = max_iter;
        cfg.tol = tol;
        cfg.seed = seed;
        return sshopm(a, cfg).pairs;
      },
      py::arg("tensor"), py::arg("starts") = 50, py::arg("max_iter") = 2000, py::arg("tol") = 1e-10,
      py::arg("seed") = kDefaultSeed);
  m.def(
      "verify",
      [](const Tensor& a, const std::vector<ZEigenPair>& pairs) {
        const AllSets sets = all_sets(a);
        Verification doc = verify_inclusion(a, pairs, sets, bound_report(a));
        doc.chain = inclusion_chain_check(sets);
        return doc.passed();
      },
      py::arg("tensor"), py::arg("pairs"));
}
