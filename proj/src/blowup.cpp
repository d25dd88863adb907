#include "kova/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace kova {

namespace {

std::string upcased(const std::string& name) {
  std::string s = name;
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

}  // namespace

std::optional<std::size_t> BlowupChart::coord_of(std::size_t source_i) const {
  if (source_i == chart) return std::nullopt;
  return vars->index_of(upcased(source_names[source_i]));
}

BlowupChart make_chart(const VectorField& field, std::size_t chart_index) {
  VectorField fa = truncate_autonomous(field);
  std::size_t n = fa.dim();
  if (chart_index >= n) throw std::out_of_range("make_chart: chart index out of range");
  for (int w : fa.weights)
    if (w <= 0) throw std::domain_error("make_chart: weights must be positive");

  BlowupChart chart;
  chart.chart = chart_index;
  chart.chart_var = fa.state_name(chart_index);
  chart.action_order = fa.weights[chart_index];
  chart.source_weights = fa.weights;
  for (std::size_t i = 0; i < n; ++i) chart.source_names.push_back(fa.state_name(i));

  std::vector<std::string> names{"r"};
  for (std::size_t i = 0; i < n; ++i)
    if (i != chart_index) names.push_back(upcased(fa.state_name(i)));
  chart.vars = make_vartable(names);

  // f_i(X | X_chart = 1) over the chart table.
  auto restricted = [&](const MultiPoly& p) {
    MultiPoly at_one = p.substituted(chart_index, Rational(1));
    // Remaining variables map onto the uppercase chart coordinates.
    std::vector<std::string> tmp_names;
    for (std::size_t i = 0; i < n; ++i) tmp_names.push_back(fa.state_name(i));
    MultiPoly out = MultiPoly::zero(chart.vars);
    for (const auto& [e, c] : at_one.terms()) {
      Exponents d(chart.vars->size(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (e[i] == 0) continue;
        d[*chart.vars->index_of(upcased(fa.state_name(i)))] += e[i];
      }
      out.add_term(d, c);
    }
    return out;
  };

  MultiPoly fj = restricted(fa.components[chart_index]);
  Rational inv_aj = Rational(1, chart.action_order);

  VectorField cf;
  cf.vars = chart.vars;
  // dr/dt = (1/a_j) r f_j(1, X)
  cf.components.push_back((MultiPoly::variable(chart.vars, 0) * fj).scaled(inv_aj));
  cf.state_index.push_back(0);
  cf.weights.push_back(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == chart_index) continue;
    MultiPoly fi = restricted(fa.components[i]);
    MultiPoly xi = MultiPoly::variable(chart.vars, *chart.vars->index_of(upcased(fa.state_name(i))));
    MultiPoly comp = fi - (xi * fj).scaled(Rational(fa.weights[i]) * inv_aj);
    cf.components.push_back(comp);
    cf.state_index.push_back(cf.components.size() - 1);
    cf.weights.push_back(fa.weights[i]);
  }
  chart.field = std::move(cf);
  return chart;
}

BlowupChart make_chart(const HamiltonianSystem& sys, const std::string& chart_var) {
  VectorField fa = truncate_autonomous(hamilton_equations(sys, 0));
  for (std::size_t i = 0; i < fa.dim(); ++i)
    if (fa.state_name(i) == chart_var) return make_chart(fa, i);
  throw std::invalid_argument("make_chart: unknown chart variable '" + chart_var + "'");
}

namespace {

/// Hamiltonian restricted to the autonomous state variables, then the chart
/// variable set to 1 and the rest renamed to chart coordinates.
MultiPoly ham_on_chart(const BlowupChart& chart, const HamiltonianSystem& sys,
                       std::size_t which) {
  MultiPoly hp = split_principal(sys, which, false).first;
  int m2 = 2 * sys.m();
  hp = hp.filter_terms([&](const Exponents& e, const Rational&) {
    for (std::size_t v = m2; v < e.size(); ++v)
      if (e[v] != 0) return false;
    return true;
  });
  MultiPoly out = MultiPoly::zero(chart.vars);
  for (const auto& [e, c] : hp.terms()) {
    Exponents d(chart.vars->size(), 0);
    for (int i = 0; i < m2; ++i) {
      if (e[i] == 0 || static_cast<std::size_t>(i) == chart.chart) continue;
      d[*chart.vars->index_of(upcased(chart.source_names[i]))] += e[i];
    }
    out.add_term(d, c);
  }
  return out;
}

// Chart points are defined modulo the Z_{a_j} action r -> w r,
// X_i -> w^{-a_i} X_i (w a primitive a_j-th root of unity); on the divisor
// two coordinate vectors are the same point when some rotation matches.
bool quotient_equivalent(int action_order, const std::vector<int>& coord_weights,
                         const std::vector<ComplexF>& x, const std::vector<ComplexF>& y,
                         double tol) {
  constexpr double kTwoPi = 6.283185307179586;
  for (int k = 0; k < action_order; ++k) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      ComplexF w = std::polar(1.0, -kTwoPi * coord_weights[i] * k / action_order);
      worst = std::max(worst, std::abs(w * x[i] - y[i]));
    }
    if (worst < tol) return true;
  }
  return false;
}

std::vector<ComplexF> chart_point_values(const DivisorFixedPoint& fp) {
  std::vector<ComplexF> x{ComplexF(0.0)};
  for (const auto& s : fp.coords) x.push_back(s.value());
  return x;
}

bool chart_point_exact(const DivisorFixedPoint& fp, std::vector<Rational>& out) {
  out.assign(1, Rational(0));
  for (const auto& s : fp.coords) {
    if (!s.exact) return false;
    out.push_back(s.rat);
  }
  return true;
}

}  // namespace

MultiPoly chart_pullback(const BlowupChart& chart, const HamiltonianSystem& sys,
                         std::size_t which) {
  return ham_on_chart(chart, sys, which);
}

std::vector<MultiPoly> v0_equations(const BlowupChart& chart, const HamiltonianSystem& sys) {
  std::vector<MultiPoly> eqs;
  for (int j = 0; j < sys.k(); ++j) eqs.push_back(ham_on_chart(chart, sys, j));
  return eqs;
}

std::vector<DivisorFixedPoint> divisor_fixed_points(const BlowupChart& chart,
                                                    const std::vector<Balance>& balances,
                                                    const FixedPointOptions& opts) {
  std::size_t n = chart.source_names.size();
  int aj = chart.action_order;
  std::vector<DivisorFixedPoint> out;

  for (const auto& b : balances) {
    const Scalar& cj = b.c[chart.chart];
    if (std::abs(cj.value()) < opts.tol) continue;  // not visible in this chart

    DivisorFixedPoint fp;
    fp.chart = chart.chart;
    fp.origin = b;

    Rational root;
    bool exact_root = b.all_exact() && rational_nth_root(cj.rat, aj, root);
    if (exact_root) {
      auto cv = b.exact_values();
      for (std::size_t i = 0; i < n; ++i) {
        if (i == chart.chart) continue;
        fp.coords.push_back(
            Scalar::from_rational(root.pow(-chart.source_weights[i]) * cv[i]));
      }
      fp.lambda1 = Scalar::from_rational(-root.inverse());
    } else {
      ComplexF factor = std::pow(cj.value(), ComplexF(-1.0 / aj));
      auto cv = b.values();
      for (std::size_t i = 0; i < n; ++i) {
        if (i == chart.chart) continue;
        fp.coords.push_back(Scalar::from_complex(
            std::pow(factor, ComplexF(static_cast<double>(chart.source_weights[i]))) * cv[i]));
      }
      fp.lambda1 = Scalar::from_complex(-factor);
    }
    out.push_back(std::move(fp));
  }

  // Cross-check: solve the divisor fixed-point equations directly and match
  // every root against a mapped balance.
  std::size_t dim = chart.field.dim();
  FieldEvaluator ev(chart.field);
  std::mt19937_64 rng(opts.rng_seed);
  std::uniform_real_distribution<double> box(-opts.radius, opts.radius);
  auto divisor_system = [&](const std::vector<ComplexF>& x) {
    std::vector<ComplexF> full{ComplexF(0.0)};
    full.insert(full.end(), x.begin(), x.end());
    std::vector<ComplexF> f = ev.eval(full);
    return std::vector<ComplexF>(f.begin() + 1, f.end());
  };
  auto divisor_jac = [&](const std::vector<ComplexF>& x) {
    std::vector<ComplexF> full{ComplexF(0.0)};
    full.insert(full.end(), x.begin(), x.end());
    CMatrix j = ev.jacobian(full);
    CMatrix sub(dim - 1, dim - 1);
    for (std::size_t i = 1; i < dim; ++i)
      for (std::size_t l = 1; l < dim; ++l) sub.at(i - 1, l - 1) = j.at(i, l);
    return sub;
  };
  std::vector<int> coord_weights;
  for (std::size_t i = 0; i < n; ++i)
    if (i != chart.chart) coord_weights.push_back(chart.source_weights[i]);
  for (int trial = 0; trial < opts.seeds; ++trial) {
    std::vector<ComplexF> x0(dim - 1);
    for (auto& v : x0) v = ComplexF(box(rng), box(rng));
    auto sol = newton_solve(divisor_system, divisor_jac, x0);
    if (!sol) continue;
    bool matched = false;
    for (const auto& fp : out) {
      std::vector<ComplexF> known;
      for (const auto& s : fp.coords) known.push_back(s.value());
      if (quotient_equivalent(chart.action_order, coord_weights, known, *sol, 1e-5)) {
        matched = true;
        break;
      }
    }
    if (!matched) {
      DivisorFixedPoint fp;
      fp.chart = chart.chart;
      for (const auto& v : *sol) fp.coords.push_back(Scalar::from_complex(v));
      // The r-direction eigenvalue comes straight from the chart field.
      std::vector<ComplexF> full{ComplexF(0.0)};
      full.insert(full.end(), sol->begin(), sol->end());
      CMatrix j = ev.jacobian(full);
      fp.lambda1 = Scalar::from_complex(j.at(0, 0));
      out.push_back(std::move(fp));
    }
  }
  return out;
}

Prop42Report prop42_check(const BlowupChart& chart, const DivisorFixedPoint& fp,
                          const KovalevskayaReport& kov) {
  Prop42Report rep;
  std::vector<Rational> xr;
  std::vector<ComplexF> spectrum;
  if (chart_point_exact(fp, xr)) {
    RatMatrix j = chart.field.jacobian(xr);
    UniPoly cp = char_poly(j);
    RationalRoots rr = rational_roots(cp);
    for (const auto& [root, mult] : rr.roots)
      for (int i = 0; i < mult; ++i) {
        rep.spectrum.push_back(Scalar::from_rational(root));
        spectrum.push_back(ComplexF(root.to_double()));
      }
    if (rr.cofactor.degree() > 0) {
      std::vector<ComplexF> coeffs;
      for (const auto& x : rr.cofactor.coeffs()) coeffs.push_back(ComplexF(x.to_double()));
      for (const auto& r : durand_kerner(coeffs)) {
        rep.spectrum.push_back(Scalar::from_complex(r));
        spectrum.push_back(r);
      }
    }
  } else {
    CMatrix j = chart.field.jacobian(chart_point_values(fp));
    for (const auto& e : numeric_eigen(j)) {
      rep.spectrum.push_back(Scalar::from_complex(e));
      spectrum.push_back(e);
    }
  }
  rep.lambda1 = fp.lambda1;

  ComplexF l1 = fp.lambda1.value();
  if (std::abs(l1) == 0.0) return rep;

  // Remove one copy of lambda_1 from the spectrum, then match
  // lambda_i/lambda_1 against -kappa_i (kappa_1 = -1 removed likewise).
  std::vector<ComplexF> rest;
  bool removed = false;
  for (const auto& v : spectrum) {
    if (!removed && std::abs(v - l1) < 1e-6 * std::max(1.0, std::abs(l1))) {
      removed = true;
      continue;
    }
    rest.push_back(v);
  }
  if (!removed) return rep;

  std::vector<ComplexF> expected;
  bool dropped_minus1 = false;
  for (const auto& e : kov.exponents) {
    ComplexF v = e.value();
    if (!dropped_minus1 && std::abs(v - ComplexF(-1.0)) < 1e-9) {
      dropped_minus1 = true;
      continue;
    }
    expected.push_back(-v);
  }
  if (rest.size() != expected.size()) return rep;

  std::vector<bool> used(expected.size(), false);
  double worst = 0.0;
  for (const auto& v : rest) {
    ComplexF ratio = v / l1;
    double best = 1e300;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < expected.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(ratio - expected[j]);
      if (d < best) { best = d; best_j = j; }
    }
    if (best == 1e300) return rep;
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  rep.worst_ratio_error = worst;
  rep.ok = worst < 1e-8;
  return rep;
}

MultiPoly v0_invariance_identity(const BlowupChart& chart, const HamiltonianSystem& sys,
                                 std::size_t which) {
  MultiPoly hj = ham_on_chart(chart, sys, which);
  // d/dt along the divisor components of the chart field.
  MultiPoly ddt = MultiPoly::zero(chart.vars);
  for (std::size_t v = 1; v < chart.vars->size(); ++v)
    ddt += hj.derivative(v) * chart.field.components[v];
  // f_chart(1, X) = a_chart * (dr/dt)/r: recover it from the chart component.
  // dr/dt = (1/a) r f_chart, so f_chart = a * d(dr/dt)/dr evaluated formally.
  MultiPoly fchart =
      chart.field.components[0].derivative(0).scaled(Rational(chart.action_order));
  Rational factor = Rational(sys.degree(which), chart.action_order);
  return ddt + (fchart * hj).scaled(factor);
}

DivisorFixedPoint manifold_dims(const BlowupChart& chart, const HamiltonianSystem& sys,
                                DivisorFixedPoint fp, const KovalevskayaReport& kov) {
  Prop42Report p42 = prop42_check(chart, fp, kov);
  fp.spectrum = p42.spectrum;

  ComplexF l1 = fp.lambda1.value();
  fp.dim_stable = fp.dim_unstable = fp.dim_center = 0;
  for (const auto& s : fp.spectrum) {
    if (s.exact && fp.lambda1.exact) {
      Rational mu = -(s.rat / fp.lambda1.rat);
      if (mu.is_zero())
        ++fp.dim_center;
      else if (mu.is_negative())
        ++fp.dim_stable;
      else
        ++fp.dim_unstable;
      continue;
    }
    ComplexF mu = s.value() / (-l1);  // normalized so the r-direction is -1
    double re = mu.real();
    if (std::abs(re) < 1e-8) {
      ++fp.dim_center;
      fp.dims_tolerance_sensitive = true;
    } else if (re < 0) {
      ++fp.dim_stable;
    } else {
      ++fp.dim_unstable;
    }
  }

  // on_v0 / singularity flags from the chart equations.
  std::vector<MultiPoly> eqs = v0_equations(chart, sys);
  std::vector<Rational> xr;
  int k = sys.k();
  if (chart_point_exact(fp, xr)) {
    std::vector<Rational> pt(xr.begin() + 1, xr.end());
    // Equations live over chart.vars (with r unused); evaluate at r=0.
    std::vector<Rational> full{Rational(0)};
    full.insert(full.end(), pt.begin(), pt.end());
    bool on = true;
    for (const auto& e : eqs)
      if (!e.eval(std::span<const Rational>(full)).is_zero()) on = false;
    fp.on_v0 = on;
    RatMatrix jac(k, chart.vars->size() - 1);
    for (int j = 0; j < k; ++j)
      for (std::size_t v = 1; v < chart.vars->size(); ++v)
        jac.at(j, v - 1) = eqs[j].derivative(v).eval(std::span<const Rational>(full));
    fp.v0_singular = jac.rank() < static_cast<std::size_t>(k);
  } else {
    std::vector<ComplexF> full = chart_point_values(fp);
    bool on = true;
    for (const auto& e : eqs)
      if (std::abs(e.eval(std::span<const ComplexF>(full))) > 1e-8) on = false;
    fp.on_v0 = on;
    CMatrix jac(k, chart.vars->size() - 1);
    for (int j = 0; j < k; ++j)
      for (std::size_t v = 1; v < chart.vars->size(); ++v)
        jac.at(j, v - 1) = eqs[j].derivative(v).eval(std::span<const ComplexF>(full));
    // Numeric rank by row elimination with a tolerance.
    std::size_t rank = 0;
    std::vector<std::vector<ComplexF>> rows(k);
    for (int j = 0; j < k; ++j) {
      rows[j].resize(chart.vars->size() - 1);
      for (std::size_t v = 0; v + 1 < chart.vars->size(); ++v) rows[j][v] = jac.at(j, v);
    }
    std::size_t cols = chart.vars->size() - 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
      std::size_t p = row;
      for (std::size_t i = row; i < rows.size(); ++i)
        if (std::abs(rows[i][col]) > std::abs(rows[p][col])) p = i;
      if (std::abs(rows[p][col]) < 1e-8) continue;
      std::swap(rows[p], rows[row]);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == row) continue;
        ComplexF f = rows[i][col] / rows[row][col];
        for (std::size_t v = col; v < cols; ++v) rows[i][v] -= f * rows[row][v];
      }
      ++row;
    }
    rank = row;
    fp.v0_singular = rank < static_cast<std::size_t>(k);
  }

  // Lowest balance: m-dimensional stable and unstable parts plus independent
  // gradients at the originating balance.
  int m = sys.m();
  fp.lowest_balance = false;
  if (fp.origin && fp.dim_stable == m && fp.dim_unstable == m) {
    const Balance& b = *fp.origin;
    VectorField fa = truncate_autonomous(hamilton_equations(sys, 0));
    std::vector<MultiPoly> hs;
    for (int j = 0; j < sys.k(); ++j) {
      MultiPoly hp = split_principal(sys, j, false).first;
      hp = hp.filter_terms([&](const Exponents& e, const Rational&) {
        for (std::size_t v = 2 * m; v < e.size(); ++v)
          if (e[v] != 0) return false;
        return true;
      });
      hs.push_back(hp.mapped_to(fa.vars));
    }
    if (b.all_exact()) {
      auto cv = b.exact_values();
      RatMatrix grads(sys.k(), 2 * m);
      for (int j = 0; j < sys.k(); ++j)
        for (int v = 0; v < 2 * m; ++v)
          grads.at(j, v) = hs[j].derivative(v).eval(std::span<const Rational>(cv));
      fp.lowest_balance = sys.k() == m && grads.rank() == static_cast<std::size_t>(m);
    } else {
      auto cv = b.values();
      // Numeric rank via the same elimination as above.
      std::vector<std::vector<ComplexF>> rows(sys.k(), std::vector<ComplexF>(2 * m));
      for (int j = 0; j < sys.k(); ++j)
        for (int v = 0; v < 2 * m; ++v)
          rows[j][v] = hs[j].derivative(v).eval(std::span<const ComplexF>(cv));
      std::size_t rnk = 0, row = 0;
      for (int col = 0; col < 2 * m && row < rows.size(); ++col) {
        std::size_t p = row;
        for (std::size_t i = row; i < rows.size(); ++i)
          if (std::abs(rows[i][col]) > std::abs(rows[p][col])) p = i;
        if (std::abs(rows[p][col]) < 1e-8) continue;
        std::swap(rows[p], rows[row]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (i == row) continue;
          ComplexF f = rows[i][col] / rows[row][col];
          for (int v = col; v < 2 * m; ++v) rows[i][v] -= f * rows[row][v];
        }
        ++row;
      }
      rnk = row;
      fp.lowest_balance = sys.k() == m && rnk == static_cast<std::size_t>(m);
    }
  }
  return fp;
}

Trajectory integrate_chart(const BlowupChart& chart, const HamiltonianSystem& sys,
                           std::vector<ComplexF> start, double t_end, double step,
                           ComplexF direction, double escape_radius) {
  Trajectory traj;
  std::vector<MultiPoly> eqs = v0_equations(chart, sys);
  FieldEvaluator eq_ev(chart.vars->size(), eqs);
  FieldEvaluator f_ev(chart.field);
  auto drift_at = [&](const std::vector<ComplexF>& x) {
    double d = 0.0;
    for (const auto& v : eq_ev.eval(x)) d = std::max(d, std::abs(v));
    return d;
  };
  auto rhs = [&](const std::vector<ComplexF>& x) {
    std::vector<ComplexF> f = f_ev.eval(x);
    for (auto& v : f) v *= direction;
    return f;
  };
  std::vector<ComplexF> x = start;
  int steps = static_cast<int>(std::ceil(t_end / step));
  int sample_every = std::max(1, steps / 200);
  for (int si = 0; si <= steps; ++si) {
    double t = si * step;
    double d = drift_at(x);
    traj.max_drift = std::max(traj.max_drift, d);
    if (si % sample_every == 0) traj.samples.push_back({t, x, d});
    double mag = 0.0;
    for (const auto& v : x) mag = std::max(mag, std::abs(v));
    if (mag > escape_radius) {
      traj.escaped = true;
      break;
    }
    if (si == steps) break;
    // Classical RK4.
    auto k1 = rhs(x);
    auto add_scaled = [&](const std::vector<ComplexF>& base, const std::vector<ComplexF>& dir,
                          double s) {
      std::vector<ComplexF> y = base;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += ComplexF(s) * dir[i];
      return y;
    };
    auto k2 = rhs(add_scaled(x, k1, step / 2));
    auto k3 = rhs(add_scaled(x, k2, step / 2));
    auto k4 = rhs(add_scaled(x, k3, step));
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += ComplexF(step / 6.0) * (k1[i] + ComplexF(2.0) * k2[i] + ComplexF(2.0) * k3[i] +
                                      k4[i]);
  }
  return traj;
}

}  // namespace kova
