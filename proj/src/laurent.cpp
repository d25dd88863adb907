#include "kova/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kova {

namespace {

constexpr int kExactHi = std::numeric_limits<int>::max() / 4;

/// Truncated Laurent series over a polynomial coefficient ring. Exponents
/// in [lo, hi) are known; hi = kExactHi marks an exact (polynomial) series.
/// Storage is additionally capped at a global order.
struct TSer {
  int lo = 0;
  int hi = kExactHi;
  std::vector<MultiPoly> c;  // coefficient of T^(lo+k); may be shorter than hi-lo due to cap
  VarTablePtr ring;

  bool is_zero_series() const { return c.empty(); }
  MultiPoly coeff_at(int e) const {
    if (e < lo || e - lo >= static_cast<int>(c.size())) return MultiPoly::zero(ring);
    return c[e - lo];
  }
};

TSer zero_series(VarTablePtr ring) {
  TSer s;
  s.ring = std::move(ring);
  s.lo = 0;
  s.hi = kExactHi;
  return s;
}

TSer const_series(const MultiPoly& value) {
  TSer s;
  s.ring = value.vars();
  s.lo = 0;
  s.hi = kExactHi;
  if (!value.is_zero()) s.c.push_back(value);
  return s;
}

void trim(TSer& s, int cap) {
  int maxlen = cap - s.lo + 1;
  if (maxlen < 0) maxlen = 0;
  if (static_cast<int>(s.c.size()) > maxlen) s.c.resize(maxlen);
  while (!s.c.empty() && s.c.front().is_zero()) {
    s.c.erase(s.c.begin());
    ++s.lo;
  }
  if (s.c.empty() && s.hi >= kExactHi / 2) s.lo = 0;  // canonical exact zero
}

TSer add(const TSer& a, const TSer& b, int cap) {
  if (a.is_zero_series() && a.hi >= kExactHi / 2) { TSer r = b; trim(r, cap); return r; }
  if (b.is_zero_series() && b.hi >= kExactHi / 2) { TSer r = a; trim(r, cap); return r; }
  TSer r;
  r.ring = a.ring;
  r.lo = std::min(a.lo, b.lo);
  r.hi = std::min(a.hi, b.hi);
  int top = std::min(cap, r.hi >= kExactHi / 2 ? cap : r.hi - 1);
  int len = top - r.lo + 1;
  if (len < 0) len = 0;
  r.c.assign(len, MultiPoly::zero(r.ring));
  for (int e = r.lo; e <= top; ++e) r.c[e - r.lo] = a.coeff_at(e) + b.coeff_at(e);
  trim(r, cap);
  return r;
}

TSer mul(const TSer& a, const TSer& b, int cap) {
  // Exact zero absorbs everything.
  if ((a.is_zero_series() && a.hi >= kExactHi / 2) ||
      (b.is_zero_series() && b.hi >= kExactHi / 2))
    return zero_series(a.ring);
  TSer r;
  r.ring = a.ring;
  r.lo = a.lo + b.lo;
  long long hi = std::min<long long>(
      {static_cast<long long>(kExactHi),
       a.hi >= kExactHi / 2 ? kExactHi : static_cast<long long>(a.hi) + b.lo,
       b.hi >= kExactHi / 2 ? kExactHi : static_cast<long long>(b.hi) + a.lo});
  r.hi = static_cast<int>(hi);
  int top = std::min(cap, r.hi >= kExactHi / 2 ? cap : r.hi - 1);
  int len = top - r.lo + 1;
  if (len < 0) len = 0;
  r.c.assign(len, MultiPoly::zero(r.ring));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      int e = a.lo + static_cast<int>(i) + b.lo + static_cast<int>(j);
      if (e > top) break;
      if (b.c[j].is_zero()) continue;
      r.c[e - r.lo] += a.c[i] * b.c[j];
    }
  }
  trim(r, cap);
  return r;
}

TSer pow(const TSer& base, int e, int cap) {
  TSer acc = const_series(MultiPoly::constant(base.ring, Rational(1)));
  TSer b = base;
  while (e) {
    if (e & 1) acc = mul(acc, b, cap);
    if (e >>= 1) b = mul(b, b, cap);
  }
  return acc;
}

TSer d_dT(const TSer& a, int cap) {
  TSer r;
  r.ring = a.ring;
  r.lo = a.lo - 1;
  r.hi = a.hi >= kExactHi / 2 ? kExactHi : a.hi - 1;
  r.c.assign(a.c.size(), MultiPoly::zero(r.ring));
  for (std::size_t k = 0; k < a.c.size(); ++k) {
    int e = a.lo + static_cast<int>(k);
    r.c[k] = a.c[k].scaled(Rational(e));
  }
  trim(r, cap);
  return r;
}

/// Evaluate a polynomial with every table variable bound to a series.
TSer eval_poly(const MultiPoly& p, const std::vector<TSer>& bind, int cap,
               const VarTablePtr& ring) {
  TSer acc = zero_series(ring);
  for (const auto& [exps, coef] : p.terms()) {
    TSer term = const_series(MultiPoly::constant(ring, coef));
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      term = mul(term, pow(bind[v], exps[v], cap), cap);
    }
    acc = add(acc, term, cap);
  }
  return acc;
}

struct RingState {
  VarTablePtr ring;
  int next_s = 1;
};

VarTablePtr extend_ring(RingState& rs, int count, std::vector<std::string>& new_names) {
  std::vector<std::string> names = rs.ring->names();
  for (int i = 0; i < count; ++i) {
    std::string nm;
    do {
      nm = "s" + std::to_string(rs.next_s++);
    } while (rs.ring->index_of(nm));
    names.push_back(nm);
    new_names.push_back(nm);
  }
  rs.ring = make_vartable(names);
  return rs.ring;
}

}  // namespace

int LaurentSeries::free_param_count() const {
  int n = 0;
  for (const auto& r : resonances) n += static_cast<int>(r.params.size());
  return n;
}

LaurentSeries build_series(const VectorField& field, const Balance& c, int order,
                           const SeriesOptions& opts) {
  if (!c.all_exact())
    throw std::invalid_argument("build_series: symbolic mode requires an exact balance");
  if (order < 1) throw std::invalid_argument("build_series: order must be >= 1");

  VectorField fa = truncate_autonomous(field);
  std::size_t n = fa.dim();
  std::vector<Rational> cv = c.exact_values();

  // Parameter ring: z0 for the time variable, remaining independent
  // variables and parameters by name, minus anything fixed to a value.
  std::vector<std::string> ring_names;
  bool has_z = !field.z_index.empty();
  auto fixed_value = [&](const std::string& name) -> std::optional<Rational> {
    auto it = opts.fixed.find(name);
    if (it == opts.fixed.end()) return std::nullopt;
    return it->second;
  };
  if (has_z && !fixed_value("z0")) ring_names.push_back("z0");
  std::vector<bool> is_state(field.vars->size(), false);
  for (auto i : field.state_index) is_state[i] = true;
  std::size_t time_index = has_z ? field.z_index[0] : field.vars->size();
  for (std::size_t v = 0; v < field.vars->size(); ++v) {
    if (is_state[v] || v == time_index) continue;
    if (!fixed_value(field.vars->name(v))) ring_names.push_back(field.vars->name(v));
  }
  RingState rs{make_vartable(ring_names), 1};

  LaurentSeries out;
  out.balance = c;
  out.order = order;
  out.param_ring = rs.ring;
  out.fixed_values = opts.fixed;
  for (std::size_t i = 0; i < n; ++i) {
    out.component_names.push_back(fa.state_name(i));
    out.pole_exponents.push_back(fa.weights[i]);
  }
  out.coeff.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    out.coeff[i].push_back(MultiPoly::constant(rs.ring, cv[i]));

  RatMatrix k = kov_matrix_exact(fa, c);

  int min_a = *std::min_element(fa.weights.begin(), fa.weights.end());
  int cap = order - min_a + 1;

  long long max_exp = 0;
  {
    UniPoly cp = char_poly(k);
    RationalRoots rr = rational_roots(cp);
    for (const auto& [root, mult] : rr.roots)
      if (root.is_integer() && root > Rational(0))
        max_exp = std::max(max_exp, root.numerator().convert_to<long long>());
  }
  out.order_below_max_exponent = order < max_exp;

  auto rebuild_ring = [&](const VarTablePtr& ring) {
    for (auto& comp : out.coeff)
      for (auto& poly : comp) poly = poly.mapped_to(ring);
    out.param_ring = ring;
  };

  for (int j = 1; j <= order; ++j) {
    // Bind each table variable to its current series.
    std::vector<TSer> bind(field.vars->size(), zero_series(rs.ring));
    for (std::size_t i = 0; i < n; ++i) {
      TSer s;
      s.ring = rs.ring;
      s.lo = -fa.weights[i];
      s.hi = kExactHi;  // zeros beyond j-1: the matrix solve repairs order j
      s.c = out.coeff[i];
      trim(s, cap);
      bind[field.state_index[i]] = s;
    }
    for (std::size_t v = 0; v < field.vars->size(); ++v) {
      if (is_state[v]) continue;
      std::string name = field.vars->name(v);
      if (v == time_index) {
        MultiPoly z0 = fixed_value("z0")
                           ? MultiPoly::constant(rs.ring, *fixed_value("z0"))
                           : MultiPoly::variable(rs.ring, *rs.ring->index_of("z0"));
        TSer s;
        s.ring = rs.ring;
        s.lo = 0;
        s.hi = kExactHi;
        s.c = {z0, MultiPoly::constant(rs.ring, Rational(1))};
        trim(s, cap);
        bind[v] = s;
      } else {
        MultiPoly val = fixed_value(name)
                            ? MultiPoly::constant(rs.ring, *fixed_value(name))
                            : MultiPoly::variable(rs.ring, *rs.ring->index_of(name));
        bind[v] = const_series(val);
      }
    }

    // r_j[i] = [T^(-a_i-1+j)] (dx_i/dT - f_i(x, z)) with b_j zeroed.
    std::vector<MultiPoly> rhs;
    for (std::size_t i = 0; i < n; ++i) {
      TSer xi = bind[field.state_index[i]];
      TSer fi = eval_poly(field.components[i], bind, cap, rs.ring);
      TSer resid = add(d_dT(xi, cap), mul(const_series(MultiPoly::constant(rs.ring, Rational(-1))),
                                          fi, cap),
                       cap);
      rhs.push_back(resid.coeff_at(-fa.weights[i] - 1 + j));
    }

    RatMatrix a = k;
    for (std::size_t i = 0; i < n; ++i) a.at(i, i) -= Rational(j);
    LinearSolveResult sol = solve_linear(a, rhs);

    if (sol.kind == LinearSolveResult::Kind::Inconsistent) {
      out.obstructed_at = LaurentSeries::Obstruction{j, sol.residuals};
      return out;
    }
    std::vector<MultiPoly> bj = sol.solution;
    if (sol.kind == LinearSolveResult::Kind::Parametric) {
      LaurentSeries::Resonance res;
      res.j = j;
      res.kernel = sol.kernel;
      std::vector<std::string> fresh;
      VarTablePtr ring = extend_ring(rs, static_cast<int>(sol.kernel.size()), fresh);
      res.params = fresh;
      rebuild_ring(ring);
      for (auto& poly : bj) poly = poly.mapped_to(ring);
      for (std::size_t t = 0; t < sol.kernel.size(); ++t) {
        MultiPoly sv = MultiPoly::variable(ring, *ring->index_of(fresh[t]));
        for (std::size_t i = 0; i < n; ++i)
          bj[i] += sv.scaled(sol.kernel[t][i]);
      }
      out.resonances.push_back(std::move(res));
    }
    for (std::size_t i = 0; i < n; ++i) out.coeff[i].push_back(bj[i]);
  }
  return out;
}

LaurentSeries build_series(const HamiltonianSystem& sys, const Balance& c, int order,
                           const SeriesOptions& opts) {
  return build_series(hamilton_equations(sys, 0), c, order, opts);
}

std::vector<int> residual_order(const VectorField& field, const LaurentSeries& series) {
  if (series.obstructed_at)
    throw std::invalid_argument("residual_order: series is obstructed");
  VectorField fa = truncate_autonomous(field);
  std::size_t n = fa.dim();
  const VarTablePtr& ring = series.param_ring;
  int order = series.order;
  int min_a = *std::min_element(series.pole_exponents.begin(), series.pole_exponents.end());
  int cap = order - min_a + 2;

  std::vector<bool> is_state(field.vars->size(), false);
  for (auto i : field.state_index) is_state[i] = true;
  std::size_t time_index = field.z_index.empty() ? field.vars->size() : field.z_index[0];

  std::vector<TSer> bind(field.vars->size(), zero_series(ring));
  for (std::size_t i = 0; i < n; ++i) {
    TSer s;
    s.ring = ring;
    s.lo = -series.pole_exponents[i];
    s.hi = s.lo + order + 1;  // honest window: nothing known past b_N
    s.c = series.coeff[i];
    bind[field.state_index[i]] = s;
  }
  for (std::size_t v = 0; v < field.vars->size(); ++v) {
    if (is_state[v]) continue;
    std::string name = field.vars->name(v);
    if (v == time_index) {
      auto fixed = series.fixed_values.find("z0");
      MultiPoly z0 = fixed != series.fixed_values.end()
                         ? MultiPoly::constant(ring, fixed->second)
                         : MultiPoly::variable(ring, *ring->index_of("z0"));
      TSer s;
      s.ring = ring;
      s.lo = 0;
      s.hi = kExactHi;
      s.c = {z0, MultiPoly::constant(ring, Rational(1))};
      bind[v] = s;
    } else if (auto fixed = series.fixed_values.find(name); fixed != series.fixed_values.end()) {
      bind[v] = const_series(MultiPoly::constant(ring, fixed->second));
    } else {
      bind[v] = const_series(MultiPoly::variable(ring, *ring->index_of(name)));
    }
  }

  std::vector<int> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    TSer xi = bind[field.state_index[i]];
    TSer fi = eval_poly(field.components[i], bind, cap, ring);
    TSer resid = add(
        d_dT(xi, cap),
        mul(const_series(MultiPoly::constant(ring, Rational(-1))), fi, cap), cap);
    int window_top = std::min(resid.hi - 1, cap);
    int lowest = window_top + 1;
    for (int e = resid.lo; e <= window_top; ++e) {
      if (!resid.coeff_at(e).is_zero()) { lowest = e; break; }
    }
    out[i] = lowest;
  }
  return out;
}

namespace {

PainleveVerdict painleve_test_impl(const VectorField& field,
                                   const HamiltonianSystem* sys,
                                   const BalanceOptions& opts, int series_order) {
  VectorField fa = truncate_autonomous(field);
  std::size_t big_m = fa.dim();
  PainleveVerdict verdict;
  std::vector<Balance> balances = find_balances(fa, opts);
  bool saw_obstructed = false;
  for (const auto& b : balances) {
    KovalevskayaReport rep = exponents(fa, b);
    verdict.reports.push_back(rep);
    if (!rep.principal) continue;
    if (!b.all_exact()) {
      verdict.detail = "principal balance found but not rational; series not built";
      saw_obstructed = false;
      verdict.kind = PainleveVerdict::Kind::Pass;
      verdict.witness = verdict.reports.size() - 1;
      continue;
    }
    long long maxexp = 1;
    for (const auto& e : rep.exponents) {
      if (!e.exact) continue;
      if (e.rat.is_integer() && e.rat > Rational(0))
        maxexp = std::max(maxexp, e.rat.numerator().convert_to<long long>());
    }
    maxexp = std::max<long long>(maxexp, series_order);
    LaurentSeries series = sys ? build_series(*sys, b, static_cast<int>(maxexp))
                               : build_series(field, b, static_cast<int>(maxexp));
    if (series.obstructed_at) {
      saw_obstructed = true;
      continue;
    }
    if (series.free_param_count() == static_cast<int>(big_m) - 1) {
      verdict.kind = PainleveVerdict::Kind::Pass;
      verdict.witness = verdict.reports.size() - 1;
      verdict.detail = "principal balance with full parameter count";
      return verdict;
    }
  }
  if (verdict.kind == PainleveVerdict::Kind::Pass) return verdict;
  verdict.kind = saw_obstructed ? PainleveVerdict::Kind::Obstructed : PainleveVerdict::Kind::Fail;
  verdict.detail = saw_obstructed ? "principal signature obstructed by a logarithmic term"
                                  : "no principal balance";
  return verdict;
}

}  // namespace

PainleveVerdict painleve_test(const HamiltonianSystem& sys, const BalanceOptions& opts,
                              int series_order) {
  return painleve_test_impl(hamilton_equations(sys, 0), &sys, opts, series_order);
}

PainleveVerdict painleve_test(const VectorField& field, const BalanceOptions& opts,
                              int series_order) {
  return painleve_test_impl(field, nullptr, opts, series_order);
}

std::vector<SeriesTermView> series_terms(const LaurentSeries& series, bool skip_zero) {
  std::vector<SeriesTermView> out;
  for (std::size_t i = 0; i < series.coeff.size(); ++i) {
    for (std::size_t j = 0; j < series.coeff[i].size(); ++j) {
      const MultiPoly& c = series.coeff[i][j];
      if (skip_zero && c.is_zero()) continue;
      out.push_back({series.component_names[i],
                     -series.pole_exponents[i] + static_cast<int>(j), print_expr(c)});
    }
  }
  return out;
}

}  // namespace kova
