#include "kova/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace kova;

namespace {

py::object json_to_py(const Json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

std::uint64_t seed_or_default(std::uint64_t seed) { return seed ? seed : 20201013ull; }

py::object py_check_weight(const std::vector<int>& a, const std::vector<int>& b, int h) {
  WeightTuple w(a, b, h);
  RegularityCertificate cert = check_weight(w);
  Json j;
  j["tuple"] = w.to_string();
  j["regular"] = cert.regular();
  j["w1"] = cert.w1_ok;
  j["w2"] = cert.w2_ok;
  if (cert.chi) j["chi"] = cert.chi->to_string("T");
  if (cert.remainder) j["remainder"] = cert.remainder->to_string("T");
  return json_to_py(j);
}

py::object py_enumerate_regular(int n, int h_max) {
  return json_to_py(weights_to_json(enumerate_regular(n, h_max)));
}

py::object py_hierarchy_weights(const std::string& family, int n) {
  HierarchyFamily f;
  if (family == "P1") f = HierarchyFamily::P1;
  else if (family == "P21") f = HierarchyFamily::P21;
  else if (family == "P22") f = HierarchyFamily::P22;
  else if (family == "P4") f = HierarchyFamily::P4;
  else throw std::invalid_argument("family must be one of P1, P21, P22, P4");
  HierarchyWeights hw = hierarchy_weights(f, n);
  Json j;
  Json qp = Json::array();
  for (const auto& [q, p] : hw.qp) qp.push_back({q, p});
  j["qp"] = qp;
  j["z"] = hw.z;
  j["H"] = hw.H;
  return json_to_py(j);
}

py::object py_analyze(const std::string& id, int seeds, double radius, std::uint64_t seed) {
  AnalyzeOptions opts;
  opts.seeds = seeds;
  opts.radius = radius;
  opts.rng_seed = seed_or_default(seed);
  AnalyzeOutcome outcome = analyze_system(HamiltonianSystem::from_catalog(id), opts);
  return json_to_py(analyze_to_json(outcome));
}

py::object py_series(const std::string& id, int balance, int order, const std::string& z0,
                     int seeds, std::uint64_t seed) {
  HamiltonianSystem sys = HamiltonianSystem::from_catalog(id);
  BalanceOptions bopts;
  bopts.seeds = seeds;
  bopts.rng_seed = seed_or_default(seed);
  std::vector<Balance> balances = find_balances(hamilton_equations(sys, 0), bopts);
  if (balance < 0 || balance >= static_cast<int>(balances.size()))
    throw std::out_of_range("balance index out of range");
  SeriesOptions sopts;
  if (z0 != "symbolic") sopts.fixed["z0"] = Rational::from_string(z0);
  return json_to_py(series_to_json(build_series(sys, balances[balance], order, sopts)));
}

py::object py_blowup(const std::string& id, const std::string& chart_var, int seeds,
                     std::uint64_t seed) {
  HamiltonianSystem sys = HamiltonianSystem::from_catalog(id);
  if (!sys.positive_weights())
    throw std::invalid_argument("blowup requires positive weights");
  BlowupChart chart = make_chart(sys, chart_var);
  BalanceOptions bopts;
  bopts.seeds = seeds;
  bopts.rng_seed = seed_or_default(seed);
  VectorField fa = truncate_autonomous(hamilton_equations(sys, 0));
  std::vector<Balance> balances = find_balances(fa, bopts);
  FixedPointOptions fpo;
  fpo.rng_seed = seed_or_default(seed);
  std::vector<DivisorFixedPoint> fps = divisor_fixed_points(chart, balances, fpo);
  for (auto& fp : fps) {
    if (!fp.origin) continue;
    KovalevskayaReport kov = exponents(fa, *fp.origin);
    fp = manifold_dims(chart, sys, fp, kov);
  }
  return json_to_py(blowup_to_json(chart, sys, fps));
}

std::string py_print_parsed(const std::string& expr, const std::vector<std::string>& names) {
  return print_expr(parse_expr(expr, make_vartable(names)));
}

py::object py_catalog(const std::string& id) {
  SystemDef def = catalog(id);
  Json j;
  j["id"] = def.id;
  Json vars = Json::array();
  for (const auto& v : def.variables)
    vars.push_back(Json{{"name", v.name}, {"role", role_name(v.role)}, {"weight", v.weight}});
  j["variables"] = vars;
  Json hams = Json::array();
  for (const auto& h : def.hamiltonians)
    hams.push_back(Json{{"name", h.name}, {"degree", h.degree}, {"expression", h.expr}});
  j["hamiltonians"] = hams;
  j["digest"] = def.digest();
  return json_to_py(j);
}

}  // namespace

PYBIND11_MODULE(_kova, m) {
  m.doc() = "Exact Kovalevskaya/Painleve analysis of quasihomogeneous Hamiltonian systems";

  m.def("catalog_ids", &catalog_ids, "Built-in system ids");
  m.def("catalog", &py_catalog, py::arg("id"), "Catalog system definition");
  m.def("parse_print", &py_print_parsed, py::arg("expr"), py::arg("variables"),
        "Parse an expression over the given variables and return its canonical form");
  m.def("check_weight", &py_check_weight, py::arg("a"), py::arg("b"), py::arg("h"),
        "Regularity certificate for a weight tuple");
  m.def("enumerate_regular", &py_enumerate_regular, py::arg("n"), py::arg("h_max") = 40,
        "All regular weights up to h_max");
  m.def("hierarchy_weights", &py_hierarchy_weights, py::arg("family"), py::arg("n"),
        "Closed-form hierarchy weights");
  m.def("analyze", &py_analyze, py::arg("system"), py::arg("seeds") = 2000,
        py::arg("radius") = 4.0, py::arg("seed") = 0,
        "Balances, exponents, identities and the Painleve verdict");
  m.def("series", &py_series, py::arg("system"), py::arg("balance"), py::arg("order"),
        py::arg("z0") = "symbolic", py::arg("seeds") = 2000, py::arg("seed") = 0,
        "Laurent series at a balance");
  m.def("blowup", &py_blowup, py::arg("system"), py::arg("chart"), py::arg("seeds") = 2000,
        py::arg("seed") = 0, "Weighted blow-up chart report");
}
