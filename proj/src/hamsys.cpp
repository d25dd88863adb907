#include "kova/hamsys.hpp"

#include "kova/numeric.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace kova {

namespace {

std::string monomial_string(const MultiPoly& p, const Exponents& e, const Rational& c) {
  MultiPoly one = MultiPoly::monomial(p.vars(), e, c);
  return print_expr(one);
}

}  // namespace

std::vector<ComplexF> VectorField::eval(const std::vector<ComplexF>& state) const {
  std::vector<ComplexF> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = components[i].eval(std::span(state));
  return out;
}

std::vector<Rational> VectorField::eval(const std::vector<Rational>& state) const {
  std::vector<Rational> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = components[i].eval(std::span(state));
  return out;
}

CMatrix VectorField::jacobian(const std::vector<ComplexF>& state) const {
  CMatrix j(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t l = 0; l < dim(); ++l)
      j.at(i, l) = components[i].derivative(state_index[l]).eval(std::span(state));
  return j;
}

RatMatrix VectorField::jacobian(const std::vector<Rational>& state) const {
  RatMatrix j(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t l = 0; l < dim(); ++l)
      j.at(i, l) = components[i].derivative(state_index[l]).eval(std::span(state));
  return j;
}

FieldEvaluator::FieldEvaluator(const VectorField& field) : n_in_(field.vars->size()) {
  if (!field.autonomous_reduced())
    throw std::invalid_argument("FieldEvaluator: field must be reduced to state variables");
  for (std::size_t i = 0; i < field.dim(); ++i) comp_.push_back(compile(field.components[i]));
  for (std::size_t i = 0; i < field.dim(); ++i)
    for (std::size_t l = 0; l < n_in_; ++l)
      deriv_.push_back(compile(field.components[i].derivative(l)));
}

FieldEvaluator::FieldEvaluator(std::size_t n_vars, const std::vector<MultiPoly>& polys)
    : n_in_(n_vars) {
  for (const auto& p : polys) comp_.push_back(compile(p));
  for (const auto& p : polys)
    for (std::size_t l = 0; l < n_in_; ++l) deriv_.push_back(compile(p.derivative(l)));
}

FieldEvaluator::Compiled FieldEvaluator::compile(const MultiPoly& p) const {
  Compiled c;
  for (const auto& [e, q] : p.terms()) {
    c.coeff.push_back(q.to_double());
    for (int x : e) c.exps.push_back(x);
  }
  return c;
}

ComplexF FieldEvaluator::eval_one(const Compiled& c, const std::vector<ComplexF>& state) const {
  ComplexF acc(0.0);
  const int* e = c.exps.data();
  for (std::size_t t = 0; t < c.coeff.size(); ++t, e += n_in_) {
    ComplexF term(c.coeff[t]);
    for (std::size_t v = 0; v < n_in_; ++v)
      for (int k = 0; k < e[v]; ++k) term *= state[v];
    acc += term;
  }
  return acc;
}

std::vector<ComplexF> FieldEvaluator::eval(const std::vector<ComplexF>& state) const {
  std::vector<ComplexF> out(comp_.size());
  for (std::size_t i = 0; i < comp_.size(); ++i) out[i] = eval_one(comp_[i], state);
  return out;
}

CMatrix FieldEvaluator::jacobian(const std::vector<ComplexF>& state) const {
  CMatrix j(comp_.size(), n_in_);
  for (std::size_t i = 0; i < comp_.size(); ++i)
    for (std::size_t l = 0; l < n_in_; ++l) j.at(i, l) = eval_one(deriv_[i * n_in_ + l], state);
  return j;
}

VectorField make_field(VarTablePtr vars, std::vector<MultiPoly> components,
                       std::vector<int> weights) {
  VectorField f;
  f.vars = std::move(vars);
  f.components = std::move(components);
  f.weights = std::move(weights);
  if (f.components.size() != f.weights.size() || f.components.size() != f.vars->size())
    throw std::invalid_argument("make_field: component/weight/variable count mismatch");
  for (std::size_t i = 0; i < f.components.size(); ++i) f.state_index.push_back(i);
  return f;
}

HamiltonianSystem::HamiltonianSystem(const SystemDef& def) : def_(def) {
  def_.validate_structure();
  std::vector<std::string> names;
  auto add = [&](VarRole role, std::vector<int>& weights) {
    for (const auto& v : def_.variables)
      if (v.role == role) {
        names.push_back(v.name);
        weights.push_back(v.weight);
      }
  };
  add(VarRole::Coordinate, qw_);
  add(VarRole::Momentum, pw_);
  add(VarRole::Independent, zw_);
  add(VarRole::Parameter, paramw_);
  m_ = static_cast<int>(qw_.size());
  vars_ = make_vartable(names);
  for (const auto& h : def_.hamiltonians) {
    hams_.push_back(parse_expr(h.expr, vars_));
    degrees_.push_back(h.degree);
  }
  for (std::size_t i = 1; i < degrees_.size(); ++i)
    if (degrees_[i] < degrees_[0])
      throw std::invalid_argument("system '" + def_.id +
                                  "': first Hamiltonian must have the lowest degree");
}

HamiltonianSystem HamiltonianSystem::from_catalog(const std::string& id) {
  return HamiltonianSystem(catalog(id));
}

std::vector<int> HamiltonianSystem::variable_weights(bool param_degrees) const {
  std::vector<int> w;
  w.insert(w.end(), qw_.begin(), qw_.end());
  w.insert(w.end(), pw_.begin(), pw_.end());
  w.insert(w.end(), zw_.begin(), zw_.end());
  for (int pd : paramw_) w.push_back(param_degrees ? pd : 0);
  return w;
}

std::vector<int> HamiltonianSystem::state_weights() const {
  std::vector<int> w = qw_;
  w.insert(w.end(), pw_.begin(), pw_.end());
  return w;
}

bool HamiltonianSystem::positive_weights() const {
  for (int w : qw_) if (w <= 0) return false;
  for (int w : pw_) if (w <= 0) return false;
  return true;
}

VectorField hamilton_equations(const HamiltonianSystem& sys, std::size_t which) {
  if (which >= static_cast<std::size_t>(sys.k()))
    throw std::out_of_range("hamilton_equations: Hamiltonian index out of range");
  const MultiPoly& h = sys.ham(which);
  VectorField f;
  f.vars = sys.vars();
  int m = sys.m();
  for (int i = 0; i < m; ++i) {
    f.components.push_back(h.derivative(m + i));  // dq_i/dz = dH/dp_i
    f.state_index.push_back(i);
    f.weights.push_back(sys.qweights()[i]);
  }
  for (int i = 0; i < m; ++i) {
    f.components.push_back(-h.derivative(i));  // dp_i/dz = -dH/dq_i
    f.state_index.push_back(m + i);
    f.weights.push_back(sys.pweights()[i]);
  }
  for (std::size_t i = 0; i < sys.z_count(); ++i) {
    f.z_index.push_back(2 * m + i);
    f.z_weights.push_back(sys.zweights()[i]);
  }
  return f;
}

std::pair<MultiPoly, MultiPoly> split_principal(const HamiltonianSystem& sys, std::size_t which,
                                                bool param_degrees) {
  const MultiPoly& h = sys.ham(which);
  long long target = sys.degree(which);
  std::vector<int> w = sys.variable_weights(param_degrees);
  for (const auto& [e, c] : h.terms()) {
    if (MultiPoly::term_degree(e, w) > target)
      throw std::domain_error("split_principal: monomial " + monomial_string(h, e, c) +
                              " exceeds declared degree " + std::to_string(target));
  }
  MultiPoly principal = h.filter_terms(
      [&](const Exponents& e, const Rational&) { return MultiPoly::term_degree(e, w) == target; });
  MultiPoly rest = h - principal;
  return {principal, rest};
}

MultiPoly poisson_bracket(const MultiPoly& f, const MultiPoly& g, const HamiltonianSystem& sys) {
  MultiPoly acc = MultiPoly::zero(sys.vars());
  int m = sys.m();
  for (int i = 0; i < m; ++i) {
    acc += f.derivative(i) * g.derivative(m + i);
    acc -= f.derivative(m + i) * g.derivative(i);
  }
  return acc;
}

VectorField principal_autonomous(const VectorField& field) {
  // Weight vector over the field's table: state weights, z weights,
  // parameters at zero.
  std::vector<int> w(field.vars->size(), 0);
  for (std::size_t i = 0; i < field.dim(); ++i) w[field.state_index[i]] = field.weights[i];
  for (std::size_t i = 0; i < field.z_index.size(); ++i) w[field.z_index[i]] = field.z_weights[i];

  std::vector<bool> keep_var(field.vars->size(), false);
  for (auto s : field.state_index) keep_var[s] = true;

  std::vector<std::string> names;
  for (std::size_t i = 0; i < field.vars->size(); ++i)
    if (keep_var[i]) names.push_back(field.vars->name(i));
  VarTablePtr reduced = make_vartable(names);

  VectorField out;
  out.vars = reduced;
  out.weights = field.weights;
  for (std::size_t i = 0; i < field.dim(); ++i) {
    long long target = 1 + field.weights[i];
    MultiPoly part = field.components[i].filter_terms([&](const Exponents& e, const Rational&) {
      if (MultiPoly::term_degree(e, w) != target) return false;
      for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v] != 0 && !keep_var[v]) return false;  // z = 0, parameters dropped
      return true;
    });
    out.components.push_back(part.mapped_to(reduced));
    out.state_index.push_back(out.components.size() - 1);
  }
  return out;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool ValidationReport::passed(const std::string& name) const {
  const CheckResult* c = find(name);
  return c && (c->status == CheckStatus::Pass || c->status == CheckStatus::NoCounterexample);
}

namespace {

CheckResult check_monomial_degrees(const std::string& name, const MultiPoly& p,
                                   std::span<const int> weights, long long target) {
  for (const auto& [e, c] : p.terms()) {
    if (MultiPoly::term_degree(e, weights) != target) {
      return {name, CheckStatus::Fail,
              "monomial " + monomial_string(p, e, c) + " has weighted degree " +
                  std::to_string(MultiPoly::term_degree(e, weights)) + ", expected " +
                  std::to_string(target)};
    }
  }
  return {name, CheckStatus::Pass, ""};
}

}  // namespace

ValidationReport validate(const HamiltonianSystem& sys, const ValidateOptions& opts) {
  ValidationReport rep;
  std::vector<int> w = sys.variable_weights(opts.param_degrees);
  int m = sys.m();
  int h1 = sys.degree(0);
  int s = h1 - 1;
  bool positive = sys.positive_weights();

  // (A1)/(H1): every Hamiltonian splits with principal part of the declared
  // degree and nothing above it.
  for (int j = 0; j < sys.k(); ++j) {
    std::string name = "A1/H1[" + std::to_string(j + 1) + "]";
    try {
      auto [hp, hn] = split_principal(sys, j, opts.param_degrees);
      if (hp.is_zero())
        rep.checks.push_back({name, CheckStatus::Fail, "principal part is empty"});
      else
        rep.checks.push_back({name, CheckStatus::Pass, ""});
    } catch (const std::domain_error& err) {
      rep.checks.push_back({name, CheckStatus::Fail, err.what()});
    }
  }

  // (A2)/(K1): principal field components are quasihomogeneous of degree
  // 1 + weight. Marked not applicable for nonpositive weights.
  {
    VectorField f = hamilton_equations(sys, 0);
    bool all_ok = true;
    std::string witness;
    try {
      auto [hp, hn] = split_principal(sys, 0, opts.param_degrees);
      for (std::size_t i = 0; i < f.dim(); ++i) {
        MultiPoly comp = i < static_cast<std::size_t>(m)
                             ? hp.derivative(m + i)
                             : -hp.derivative(i - m);
        CheckResult r = check_monomial_degrees("", comp, w, 1 + f.weights[i]);
        if (r.status != CheckStatus::Pass) {
          all_ok = false;
          witness = "component " + f.state_name(i) + ": " + r.witness;
          break;
        }
      }
    } catch (const std::domain_error& err) {
      all_ok = false;
      witness = err.what();
    }
    CheckStatus st = all_ok ? CheckStatus::Pass : CheckStatus::Fail;
    rep.checks.push_back({"A2", st, witness});
    if (positive)
      rep.checks.push_back({"K1", st, witness});
    else
      rep.checks.push_back({"K1", CheckStatus::NotApplicable, "nonpositive weight"});
  }

  // (A3)/(K2): non-principal degrees stay below h.
  {
    bool ok = true;
    std::string witness;
    for (int j = 0; j < sys.k() && ok; ++j) {
      try {
        auto [hp, hn] = split_principal(sys, j, opts.param_degrees);
        auto d = hn.weighted_degree(w);
        if (d && *d >= sys.degree(j)) {
          ok = false;
          witness = "H" + std::to_string(j + 1) + " non-principal degree " + std::to_string(*d);
        }
      } catch (const std::domain_error& err) {
        ok = false;
        witness = err.what();
      }
    }
    rep.checks.push_back({"A3/K2", ok ? CheckStatus::Pass : CheckStatus::Fail, witness});
  }

  // (A4)/(K3): every component monomial of the full field has weighted
  // degree congruent to 1 + component weight mod s = h-1. Parameters count
  // with their declared degrees here: the Z_s action scales them too.
  {
    VectorField f = hamilton_equations(sys, 0);
    std::vector<int> wz = sys.variable_weights(true);
    bool ok = true;
    std::string witness;
    for (std::size_t i = 0; i < f.dim() && ok; ++i) {
      for (const auto& [e, c] : f.components[i].terms()) {
        long long d = MultiPoly::term_degree(e, wz);
        long long want = 1 + f.weights[i];
        if (s != 0 && ((d - want) % s + s) % s != 0) {
          ok = false;
          witness = "component " + f.state_name(i) + " monomial " +
                    monomial_string(f.components[i], e, c) + " breaks the Z_s symmetry";
          break;
        }
      }
    }
    rep.checks.push_back({"A4/K3", ok ? CheckStatus::Pass : CheckStatus::Fail, witness});
  }

  // (A5): invariance of the symplectic form sum dq^dp + sum dz_i^dH_i
  // reduces to the pairing law plus z_i + h_i = 0 mod s once (A1) holds.
  {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < m; ++i)
      if (sys.qweights()[i] + sys.pweights()[i] != s) {
        ok = false;
        witness = "a_" + std::to_string(i + 1) + " + b_" + std::to_string(i + 1) +
                  " != h-1";
      }
    if (!sys.zweights().empty() && sys.zweights()[0] != h1 - 2) {
      ok = false;
      witness = "deg z_1 != h-2";
    }
    for (std::size_t i = 0; i < sys.zweights().size(); ++i) {
      int hi = i < static_cast<std::size_t>(sys.k()) ? sys.degree(i) : h1;
      if (s != 0 && ((sys.zweights()[i] + hi) % s + s) % s != 0) {
        ok = false;
        witness = "deg z_" + std::to_string(i + 1) + " + h_" + std::to_string(i + 1) +
                  " not divisible by h-1";
      }
    }
    rep.checks.push_back({"A5", ok ? CheckStatus::Pass : CheckStatus::Fail, witness});
  }

  // (H0): pairwise Poisson commutation of the autonomous quasihomogeneous
  // cores (the full z-dependent hierarchy Hamiltonians satisfy a different
  // compatibility relation and need not commute verbatim).
  {
    std::vector<MultiPoly> cores;
    for (int j = 0; j < sys.k(); ++j) {
      MultiPoly hp;
      try {
        hp = split_principal(sys, j, opts.param_degrees).first;
      } catch (const std::domain_error&) {
        hp = sys.ham(j);
      }
      cores.push_back(hp.filter_terms([&](const Exponents& e, const Rational&) {
        for (std::size_t v = 2 * m; v < e.size(); ++v)
          if (e[v] != 0) return false;
        return true;
      }));
    }
    bool ok = true;
    std::string witness;
    for (int i = 0; i < sys.k() && ok; ++i)
      for (int j = i + 1; j < sys.k() && ok; ++j) {
        MultiPoly br = poisson_bracket(cores[i], cores[j], sys);
        if (!br.is_zero()) {
          ok = false;
          witness = "{H" + std::to_string(i + 1) + "^A,H" + std::to_string(j + 1) +
                    "^A} = " + print_expr(br);
        }
      }
    rep.checks.push_back({"H0", ok ? CheckStatus::Pass : CheckStatus::Fail, witness});
  }

  // (H2): h_1 = a_j + b_j + 1 and h_1 <= h_i.
  {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < m; ++i)
      if (sys.qweights()[i] + sys.pweights()[i] + 1 != h1) {
        ok = false;
        witness = "h_1 != a_" + std::to_string(i + 1) + " + b_" + std::to_string(i + 1) + " + 1";
      }
    for (int j = 0; j < sys.k(); ++j)
      if (sys.degree(j) < h1) {
        ok = false;
        witness = "h_" + std::to_string(j + 1) + " < h_1";
      }
    rep.checks.push_back({"H2", ok ? CheckStatus::Pass : CheckStatus::Fail, witness});
  }

  // (S): stochastic falsifier for nonzero roots of the truncated field.
  {
    VectorField fa = principal_autonomous(hamilton_equations(sys, 0));
    FieldEvaluator ev(fa);
    std::mt19937_64 rng(opts.rng_seed);
    std::uniform_real_distribution<double> box(-opts.s_radius, opts.s_radius);
    std::size_t n = fa.dim();
    auto fn = [&](const std::vector<ComplexF>& x) { return ev.eval(x); };
    auto jn = [&](const std::vector<ComplexF>& x) { return ev.jacobian(x); };
    std::string found;
    for (int trial = 0; trial < opts.s_seeds && found.empty(); ++trial) {
      std::vector<ComplexF> x0(n);
      for (auto& v : x0) v = ComplexF(box(rng), box(rng));
      NewtonOptions nopts;
      nopts.tol = opts.s_tol;
      auto root = newton_solve(fn, jn, x0, nopts);
      if (!root) continue;
      double mag = 0.0;
      for (const auto& v : *root) mag = std::max(mag, std::abs(v));
      // Homogeneous fields approach the origin slowly; only a clearly
      // nonzero root counts as a counterexample.
      if (mag < 1e-3) continue;
      std::vector<ComplexF> residual = ev.eval(*root);
      double rmax = 0.0;
      for (const auto& v : residual) rmax = std::max(rmax, std::abs(v));
      if (rmax > opts.s_tol * std::max(1.0, mag)) continue;
      std::ostringstream os;
      os << "nonzero fixed point near (";
      for (std::size_t i = 0; i < n; ++i) {
        if (i) os << ", ";
        os << (*root)[i].real();
        if (std::abs((*root)[i].imag()) > 1e-9) os << (((*root)[i].imag() < 0) ? "-" : "+")
                                                   << std::abs((*root)[i].imag()) << "i";
      }
      os << ")";
      found = os.str();
    }
    if (found.empty())
      rep.checks.push_back({"S", CheckStatus::NoCounterexample,
                            "no counterexample found (" + std::to_string(opts.s_seeds) +
                                " seeds)"});
    else
      rep.checks.push_back({"S", CheckStatus::Fail, found});
  }

  // (W1)-style positivity note for bookkeeping.
  if (!positive)
    rep.checks.push_back({"W1", CheckStatus::NotApplicable, "nonpositive weight"});
  else {
    int minw = *std::min_element(w.begin(), w.begin() + 2 * m);
    rep.checks.push_back({"W1", (minw == 1 || minw == 2) ? CheckStatus::Pass : CheckStatus::Fail,
                          minw == 1 || minw == 2 ? "" : "min weight " + std::to_string(minw)});
  }

  return rep;
}

ValidationReport prop25_check(const HamiltonianSystem& sys) {
  ValidationReport rep;
  int m = sys.m();
  int h = sys.degree(0);

  bool pairing = true;
  for (int i = 0; i < m; ++i)
    if (sys.qweights()[i] + sys.pweights()[i] != h - 1) pairing = false;
  rep.checks.push_back({"pairing(a_i+b_i=h-1)",
                        pairing ? CheckStatus::Pass : CheckStatus::Fail, ""});

  bool rdeg = sys.zweights().empty() || sys.zweights()[0] == h - 2;
  rep.checks.push_back({"r=h-2", rdeg ? CheckStatus::Pass : CheckStatus::Fail, ""});

  bool hn_deg = true;
  std::string witness;
  std::vector<int> w = sys.variable_weights(false);
  auto [hp, hn] = split_principal(sys, 0, false);
  for (const auto& [e, c] : hn.terms()) {
    if (MultiPoly::term_degree(e, w) != 1) {
      hn_deg = false;
      witness = "non-principal monomial " + monomial_string(hn, e, c) +
                " has variables-only degree " +
                std::to_string(MultiPoly::term_degree(e, w));
    }
  }
  rep.checks.push_back(
      {"deg(H^N)=1", hn_deg ? CheckStatus::Pass : CheckStatus::Fail, witness});

  if (sys.z_count() == 0) {
    rep.checks.push_back({"min-weight", CheckStatus::NotApplicable, "autonomous"});
  } else {
    std::vector<int> sw = sys.state_weights();
    int minw = *std::min_element(sw.begin(), sw.end());
    rep.checks.push_back({"min-weight",
                          (minw == 1 || minw == 2) ? CheckStatus::Pass : CheckStatus::Fail,
                          "min weight " + std::to_string(minw)});
  }
  return rep;
}

MultiPoly euler_identity_check(const HamiltonianSystem& sys, std::size_t which) {
  const MultiPoly& h = sys.ham(which);
  int m = sys.m();
  MultiPoly acc = MultiPoly::zero(sys.vars());
  for (int i = 0; i < m; ++i) {
    acc += (MultiPoly::variable(sys.vars(), i) * h.derivative(i))
               .scaled(Rational(sys.qweights()[i]));
    acc += (MultiPoly::variable(sys.vars(), m + i) * h.derivative(m + i))
               .scaled(Rational(sys.pweights()[i]));
  }
  acc -= h.scaled(Rational(sys.degree(which)));
  return acc;
}

}  // namespace kova
