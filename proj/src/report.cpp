#include "kova/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kova {

Json scalar_to_json(const Scalar& s) {
  Json j;
  if (s.exact)
    j["exact"] = s.rat.to_string();
  else
    j["approx"] = {s.approx.real(), s.approx.imag()};
  return j;
}

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
    case CheckStatus::NoCounterexample: return "no-counterexample";
  }
  return "?";
}

}  // namespace

Json check_to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["status"] = status_name(c.status);
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

std::string AnalyzeOutcome::weight_string() const {
  std::vector<int> w = sys.state_weights();
  std::sort(w.begin(), w.end());
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ";" << sys.degree(0) << ")";
  return os.str();
}

std::vector<std::pair<std::string, int>> AnalyzeOutcome::signature_counts() const {
  // Group by signature; order groups lexicographically descending on the
  // sorted exponent vectors, which reproduces the table layout.
  struct Group {
    std::vector<double> key;
    std::string sig;
    int count = 0;
  };
  std::vector<Group> groups;
  for (const auto& b : balances) {
    std::string sig = signature_string(b.kov);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.sig == sig; });
    if (it != groups.end()) {
      ++it->count;
      continue;
    }
    Group g;
    g.sig = sig;
    g.count = 1;
    for (const auto& e : b.kov.exponents) g.key.push_back(e.value().real());
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.key > b.key; });
  std::vector<std::pair<std::string, int>> out;
  for (const auto& g : groups) out.emplace_back(g.sig, g.count);
  return out;
}

std::string AnalyzeOutcome::table_row() const {
  std::ostringstream os;
  os << weight_string() << ": ";
  auto groups = signature_counts();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) os << ", ";
    os << groups[i].first << " x" << groups[i].second;
  }
  if (groups.empty()) os << "no balances found";
  return os.str();
}

AnalyzeOutcome analyze_system(const HamiltonianSystem& sys, const AnalyzeOptions& opts) {
  AnalyzeOutcome out{sys, {}, {}, {}, false, {}};
  ValidateOptions vopts;
  vopts.rng_seed = opts.rng_seed;
  out.validation = validate(sys, vopts);
  out.blowup_applicable = sys.positive_weights();

  VectorField fa = truncate_autonomous(hamilton_equations(sys, 0));
  BalanceOptions bopts;
  bopts.seeds = opts.seeds;
  bopts.radius = opts.radius;
  bopts.rng_seed = opts.rng_seed;
  std::vector<Balance> balances = find_balances(fa, bopts);

  bool structural = out.validation.passed("A2") && out.validation.passed("H2");
  for (const auto& b : balances) {
    BalanceAnalysis ba{exponents(fa, b), false, {}};
    ba.pairing_ok = pairing_check(ba.kov, sys.degree(0));
    ba.th45 = theorem45_check(sys, b);
    if (b.all_exact()) {
      if (!ba.kov.minus_one_eigvec_ok)
        out.invariant_violations.push_back("eigenvector identity for -1 failed at balance " +
                                           signature_string(ba.kov));
      if (structural && !ba.pairing_ok)
        out.invariant_violations.push_back("exponent pairing failed at an exact balance of " +
                                           sys.def().id);
      if (out.validation.passed("H0") && structural && !ba.th45.all_ok())
        out.invariant_violations.push_back("gradient identity failed at an exact balance of " +
                                           sys.def().id);
    }
    out.balances.push_back(std::move(ba));
  }

  out.verdict = painleve_test(sys, bopts);
  return out;
}

Json analyze_to_json(const AnalyzeOutcome& outcome) {
  Json j;
  j["weights"] = outcome.weight_string();
  Json checks = Json::array();
  for (const auto& c : outcome.validation.checks) checks.push_back(check_to_json(c));
  j["validation"] = checks;

  Json balances = Json::array();
  for (const auto& b : outcome.balances) {
    Json jb;
    Json coords = Json::array();
    for (const auto& s : b.kov.balance.c) coords.push_back(scalar_to_json(s));
    jb["c"] = coords;
    jb["source"] = b.kov.balance.source == BalanceSource::ExactVerified ? "exact-verified"
                   : b.kov.balance.source == BalanceSource::NewtonFound ? "newton-found"
                                                                        : "user-supplied";
    jb["residual"] = b.kov.balance.residual;
    Json exps = Json::array();
    for (const auto& e : b.kov.exponents) exps.push_back(scalar_to_json(e));
    jb["exponents"] = exps;
    jb["signature"] = signature_string(b.kov);
    jb["semisimple"] =
        b.kov.semisimple == 1 ? Json(true) : (b.kov.semisimple == 0 ? Json(false) : Json());
    jb["principal"] = b.kov.principal;
    jb["pairing"] = b.pairing_ok;
    Json th45 = Json::array();
    for (const auto& e : b.th45.entries) {
      Json je;
      je["hamiltonian"] = e.j + 1;
      je["grad_zero"] = e.grad_zero;
      je["identity_ok"] = e.identity_ok;
      je["ham_zero"] = e.ham_zero;
      th45.push_back(je);
    }
    jb["theorem45"] = th45;
    balances.push_back(jb);
  }
  j["balances"] = balances;

  Json sig = Json::array();
  for (const auto& [s, count] : outcome.signature_counts())
    sig.push_back(Json{{"signature", s}, {"count", count}});
  j["signatures"] = sig;

  j["painleve"] = outcome.verdict.kind == PainleveVerdict::Kind::Pass        ? "pass"
                  : outcome.verdict.kind == PainleveVerdict::Kind::Obstructed ? "obstructed"
                                                                              : "fail";
  j["table_row"] = outcome.table_row();
  if (!outcome.invariant_violations.empty()) j["invariant_violations"] = outcome.invariant_violations;
  return j;
}

Json weights_to_json(const std::vector<WeightTuple>& tuples) {
  Json arr = Json::array();
  for (const auto& w : tuples) {
    Json j;
    j["tuple"] = w.to_string();
    j["a"] = w.a;
    j["b"] = w.b;
    j["h"] = w.h;
    RegularityCertificate cert = check_weight(w);
    if (cert.chi) j["chi"] = cert.chi->to_string("T");
    j["chi_at_one"] = chi_at_one(w).to_string();
    arr.push_back(j);
  }
  return arr;
}

Json series_to_json(const LaurentSeries& series) {
  Json j;
  Json coords = Json::array();
  for (const auto& s : series.balance.c) coords.push_back(scalar_to_json(s));
  j["balance"] = coords;
  j["order"] = series.order;
  j["components"] = series.component_names;
  j["pole_exponents"] = series.pole_exponents;
  Json terms = Json::array();
  for (const auto& t : series_terms(series)) {
    Json jt;
    jt["component"] = t.component;
    jt["exponent"] = t.exponent;
    jt["coefficient"] = t.coefficient;
    terms.push_back(jt);
  }
  j["terms"] = terms;
  Json res = Json::array();
  for (const auto& r : series.resonances) {
    Json jr;
    jr["j"] = r.j;
    jr["params"] = r.params;
    Json kern = Json::array();
    for (const auto& v : r.kernel) {
      Json kv = Json::array();
      for (const auto& x : v) kv.push_back(x.to_string());
      kern.push_back(kv);
    }
    jr["kernel"] = kern;
    res.push_back(jr);
  }
  j["resonances"] = res;
  j["free_parameters"] = series.free_param_count();
  if (series.obstructed_at) {
    Json jo;
    jo["j"] = series.obstructed_at->j;
    Json rs = Json::array();
    for (const auto& p : series.obstructed_at->residuals) rs.push_back(print_expr(p));
    jo["residuals"] = rs;
    j["obstructed_at"] = jo;
  }
  if (series.order_below_max_exponent)
    j["warning"] = "order below the largest Kovalevskaya exponent; test incomplete";
  return j;
}

Json blowup_to_json(const BlowupChart& chart, const HamiltonianSystem& sys,
                    const std::vector<DivisorFixedPoint>& fps) {
  Json j;
  j["chart_variable"] = chart.chart_var;
  j["action_order"] = chart.action_order;
  j["coordinates"] = chart.vars->names();
  Json field = Json::array();
  for (std::size_t i = 0; i < chart.field.dim(); ++i) {
    Json jf;
    jf["variable"] = chart.vars->name(i);
    jf["rhs"] = print_expr(chart.field.components[i]);
    field.push_back(jf);
  }
  j["field"] = field;
  Json pulls = Json::array();
  for (int i = 0; i < sys.k(); ++i) {
    Json jp;
    jp["hamiltonian"] = "H" + std::to_string(i + 1);
    jp["power"] = sys.degree(i);
    jp["bracket"] = print_expr(chart_pullback(chart, sys, i));
    pulls.push_back(jp);
  }
  j["pullbacks"] = pulls;
  Json eqs = Json::array();
  for (const auto& e : v0_equations(chart, sys)) eqs.push_back(print_expr(e));
  j["v0_equations"] = eqs;
  Json points = Json::array();
  for (const auto& fp : fps) {
    Json jp;
    Json coords = Json::array();
    for (const auto& s : fp.coords) coords.push_back(scalar_to_json(s));
    jp["coords"] = coords;
    if (fp.origin) {
      Json oc = Json::array();
      for (const auto& s : fp.origin->c) oc.push_back(scalar_to_json(s));
      jp["balance"] = oc;
    }
    Json spec = Json::array();
    for (const auto& s : fp.spectrum) spec.push_back(scalar_to_json(s));
    jp["spectrum"] = spec;
    jp["dims"] = {fp.dim_stable, fp.dim_unstable, fp.dim_center};
    jp["lowest_balance"] = fp.lowest_balance;
    jp["on_v0"] = fp.on_v0;
    jp["v0_singular"] = fp.v0_singular;
    points.push_back(jp);
  }
  j["fixed_points"] = points;
  return j;
}

Json make_report(const std::string& command, const Json& args, const Json& sections) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["args"] = args;
  j["sections"] = sections;
  return j;
}

Json make_report(const std::string& command, const Json& args, const Json& sections,
                 const SystemDef& def) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["args"] = args;
  j["system"] = Json{{"id", def.id}, {"digest", def.digest()}};
  j["sections"] = sections;
  return j;
}

std::vector<std::string> table4_system_ids() {
  return {"P1_2",  "Cosgrove", "P21_2", "MatP1", "H2323", "P22_2",
          "P4_2",  "MatP2",    "NY_A4", "MatP4", "H1210", "Hm1142"};
}

}  // namespace kova
