#include "kova/kovalevskaya.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace kova {

std::string Scalar::to_string() const {
  if (exact) return rat.to_string();
  std::ostringstream os;
  os << approx.real();
  if (std::abs(approx.imag()) > 0) os << (approx.imag() < 0 ? "-" : "+") << std::abs(approx.imag())
                                      << "i";
  return os.str();
}

bool Balance::all_exact() const {
  return std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.exact; });
}

std::vector<ComplexF> Balance::values() const {
  std::vector<ComplexF> v;
  v.reserve(c.size());
  for (const auto& s : c) v.push_back(s.value());
  return v;
}

std::vector<Rational> Balance::exact_values() const {
  std::vector<Rational> v;
  v.reserve(c.size());
  for (const auto& s : c) {
    if (!s.exact) throw std::logic_error("Balance: not exact");
    v.push_back(s.rat);
  }
  return v;
}

VectorField truncate_autonomous(const VectorField& field) {
  if (field.autonomous_reduced()) return field;
  return principal_autonomous(field);
}

namespace {

// G(c) = f^A(c) + a o c and its Jacobian Df^A + diag(a) (the K matrix).
std::vector<ComplexF> balance_residual(const FieldEvaluator& ev, const std::vector<int>& weights,
                                       const std::vector<ComplexF>& x) {
  std::vector<ComplexF> g = ev.eval(x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += ComplexF(weights[i]) * x[i];
  return g;
}

CMatrix balance_jacobian(const FieldEvaluator& ev, const std::vector<int>& weights,
                         const std::vector<ComplexF>& x) {
  CMatrix j = ev.jacobian(x);
  for (std::size_t i = 0; i < j.rows(); ++i) j.at(i, i) += ComplexF(weights[i]);
  return j;
}

std::vector<Rational> exact_residual(const VectorField& fa, const std::vector<Rational>& c) {
  std::vector<Rational> g = fa.eval(c);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += Rational(fa.weights[i]) * c[i];
  return g;
}

bool lex_less(const std::vector<ComplexF>& a, const std::vector<ComplexF>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

std::vector<Balance> find_balances(const VectorField& field, const BalanceOptions& opts) {
  VectorField fa = truncate_autonomous(field);
  FieldEvaluator ev(fa);
  std::size_t n = fa.dim();
  std::mt19937_64 rng(opts.rng_seed);
  std::uniform_real_distribution<double> box(-opts.radius, opts.radius);

  auto fn = [&](const std::vector<ComplexF>& x) { return balance_residual(ev, fa.weights, x); };
  auto jn = [&](const std::vector<ComplexF>& x) { return balance_jacobian(ev, fa.weights, x); };

  std::vector<std::vector<ComplexF>> found;
  std::vector<bool> degenerate;
  for (int trial = 0; trial < opts.seeds; ++trial) {
    std::vector<ComplexF> x0(n);
    for (auto& v : x0) v = ComplexF(box(rng), box(rng));
    NewtonOptions nopts;
    nopts.tol = opts.newton_tol;
    auto root = newton_solve(fn, jn, x0, nopts);
    if (!root) continue;
    double mag = 0.0;
    for (const auto& v : *root) mag = std::max(mag, std::abs(v));
    if (mag < opts.dedup_tol) continue;  // origin
    bool dup = false;
    for (auto& known : found) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(known[i] - (*root)[i]));
      if (d < opts.dedup_tol) { dup = true; break; }
    }
    if (dup) continue;
    CMatrix j = balance_jacobian(ev, fa.weights, *root);
    double scale = std::pow(std::max(1.0, j.max_abs()), static_cast<double>(n));
    degenerate.push_back(std::abs(det_complex(j)) < 1e-8 * scale);
    found.push_back(*root);
  }

  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(found[a], found[b]); });

  std::vector<Balance> out;
  for (std::size_t oi : order) {
    const auto& root = found[oi];
    Balance b;
    b.degenerate_jacobian = degenerate[oi];
    bool exact_all = true;
    std::vector<Rational> exact(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational r;
      if (std::abs(root[i].imag()) < 1e-9 &&
          rational_reconstruct(root[i].real(), opts.den_bound, r)) {
        exact[i] = r;
      } else {
        exact_all = false;
        break;
      }
    }
    if (exact_all) {
      std::vector<Rational> res = exact_residual(fa, exact);
      exact_all = std::all_of(res.begin(), res.end(),
                              [](const Rational& x) { return x.is_zero(); });
    }
    if (exact_all) {
      for (std::size_t i = 0; i < n; ++i) b.c.push_back(Scalar::from_rational(exact[i]));
      b.residual = 0.0;
      b.source = BalanceSource::ExactVerified;
    } else {
      std::vector<ComplexF> res = balance_residual(ev, fa.weights, root);
      double rmax = 0.0;
      for (const auto& v : res) rmax = std::max(rmax, std::abs(v));
      for (std::size_t i = 0; i < n; ++i) b.c.push_back(Scalar::from_complex(root[i]));
      b.residual = rmax;
      b.source = BalanceSource::NewtonFound;
    }
    out.push_back(std::move(b));
  }
  return out;
}

Balance balance_from_exact(const VectorField& field, const std::vector<Rational>& c) {
  VectorField fa = truncate_autonomous(field);
  if (c.size() != fa.dim()) throw std::invalid_argument("balance_from_exact: arity");
  std::vector<Rational> res = exact_residual(fa, c);
  for (const auto& r : res)
    if (!r.is_zero())
      throw std::invalid_argument("balance_from_exact: residual " + r.to_string() +
                                  " is not zero");
  Balance b;
  for (const auto& x : c) b.c.push_back(Scalar::from_rational(x));
  b.residual = 0.0;
  b.source = BalanceSource::UserSupplied;
  return b;
}

RatMatrix kov_matrix_exact(const VectorField& field, const Balance& c) {
  VectorField fa = truncate_autonomous(field);
  RatMatrix k = fa.jacobian(c.exact_values());
  for (std::size_t i = 0; i < k.rows(); ++i) k.at(i, i) += Rational(fa.weights[i]);
  return k;
}

CMatrix kov_matrix_numeric(const VectorField& field, const Balance& c) {
  VectorField fa = truncate_autonomous(field);
  if (c.residual > 1e-8)
    throw std::invalid_argument("kov_matrix: residual above tolerance; not a balance");
  FieldEvaluator ev(fa);
  return balance_jacobian(ev, fa.weights, c.values());
}

namespace {

bool is_near_integer(ComplexF v, double tol, long long& out) {
  if (std::abs(v.imag()) > tol) return false;
  double r = std::round(v.real());
  if (std::abs(v.real() - r) > tol) return false;
  out = static_cast<long long>(r);
  return true;
}

}  // namespace

KovalevskayaReport exponents(const VectorField& field, const Balance& c) {
  VectorField fa = truncate_autonomous(field);
  KovalevskayaReport rep;
  rep.balance = c;
  std::size_t n = fa.dim();

  if (c.all_exact()) {
    RatMatrix k = kov_matrix_exact(fa, c);
    rep.k_exact = k;
    UniPoly cp = char_poly(k);
    RationalRoots rr = rational_roots(cp);
    long long found = 0;
    for (const auto& [root, mult] : rr.roots) found += mult;
    std::vector<Scalar> exps;
    for (const auto& [root, mult] : rr.roots)
      for (int i = 0; i < mult; ++i) exps.push_back(Scalar::from_rational(root));
    int semis = 1;
    if (rr.cofactor.degree() > 0) {
      // Non-rational part: numeric roots; square-freeness decided exactly.
      rep.exact = false;
      std::vector<ComplexF> coeffs;
      for (const auto& x : rr.cofactor.coeffs()) coeffs.push_back(ComplexF(x.to_double()));
      for (const auto& r : durand_kerner(coeffs)) exps.push_back(Scalar::from_complex(r));
      UniPoly g = unipoly_gcd(rr.cofactor, rr.cofactor.derivative());
      if (g.degree() > 0) semis = -1;  // repeated irrational eigenvalue: undecided here
    } else {
      rep.exact = true;
    }
    // Exact semisimplicity per rational eigenvalue: geometric = algebraic.
    for (const auto& [root, mult] : rr.roots) {
      if (mult == 1) continue;
      RatMatrix shifted = k;
      for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= root;
      if (shifted.rank() != n - static_cast<std::size_t>(mult)) semis = 0;
    }
    rep.semisimple = semis;
    rep.exponents = std::move(exps);

    // Prop 3.3(i): a o c is an eigenvector for -1.
    std::vector<Rational> v(n);
    bool nonzero = false;
    auto cv = c.exact_values();
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = Rational(fa.weights[i]) * cv[i];
      if (!v[i].is_zero()) nonzero = true;
    }
    std::vector<Rational> kv = k.apply(v);
    bool ok = nonzero;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (kv[i] != -v[i]) ok = false;
    rep.minus_one_eigvec_ok = ok;
    for (const auto& x : v) rep.eigvec_minus1.push_back(Scalar::from_rational(x));
  } else {
    CMatrix k = kov_matrix_numeric(fa, c);
    std::vector<ComplexF> eig = numeric_eigen(k);
    rep.exact = false;
    for (const auto& e : eig) rep.exponents.push_back(Scalar::from_complex(e));
    double gap = 1e300;
    for (std::size_t i = 0; i < eig.size(); ++i)
      for (std::size_t j = i + 1; j < eig.size(); ++j)
        gap = std::min(gap, std::abs(eig[i] - eig[j]));
    rep.semisimple = gap > 1e-6 ? 1 : -1;

    std::vector<ComplexF> v(n);
    auto cv = c.values();
    double nv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = ComplexF(fa.weights[i]) * cv[i];
      nv = std::max(nv, std::abs(v[i]));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ComplexF acc(0.0);
      for (std::size_t j = 0; j < n; ++j) acc += k.at(i, j) * v[j];
      worst = std::max(worst, std::abs(acc + v[i]));
    }
    rep.minus_one_eigvec_ok = nv > 0 && worst < 1e-6 * std::max(1.0, nv);
    for (const auto& x : v) rep.eigvec_minus1.push_back(Scalar::from_complex(x));
  }

  std::sort(rep.exponents.begin(), rep.exponents.end(), [](const Scalar& a, const Scalar& b) {
    ComplexF x = a.value(), y = b.value();
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });

  // Classical test: exactly one -1, everything else a nonnegative integer,
  // and a semisimple K.
  int minus_ones = 0;
  bool others_ok = true;
  for (const auto& e : rep.exponents) {
    long long iv = 0;
    if (!is_near_integer(e.value(), 1e-6, iv)) { others_ok = false; continue; }
    if (iv == -1)
      ++minus_ones;
    else if (iv < 0)
      others_ok = false;
  }
  rep.principal = (minus_ones == 1) && others_ok && rep.semisimple == 1;
  return rep;
}

bool pairing_check(const KovalevskayaReport& report, int h, double tol) {
  std::vector<ComplexF> exps;
  for (const auto& e : report.exponents) exps.push_back(e.value());
  // Multiset symmetry under kappa -> h-1-kappa.
  std::vector<bool> used(exps.size(), false);
  for (const auto& e : exps) {
    ComplexF partner = ComplexF(h - 1) - e;
    bool matched = false;
    for (std::size_t j = 0; j < exps.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(exps[j] - partner) < tol) { used[j] = true; matched = true; break; }
    }
    if (!matched) return false;
  }
  bool has_h = std::any_of(exps.begin(), exps.end(),
                           [&](ComplexF e) { return std::abs(e - ComplexF(h)) < tol; });
  return has_h;
}

bool Theorem45Report::all_ok() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Theorem45Entry& e) { return e.identity_ok && e.ham_zero; });
}

Theorem45Report theorem45_check(const HamiltonianSystem& sys, const Balance& c) {
  Theorem45Report rep;
  VectorField fa = truncate_autonomous(hamilton_equations(sys, 0));
  std::size_t n = fa.dim();
  int m = sys.m();

  // Hamiltonians restricted to the state variables (parameters and z do not
  // appear in the quasihomogeneous core used here).
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

  if (c.all_exact()) {
    rep.exact = true;
    RatMatrix k = kov_matrix_exact(fa, c);
    auto cv = c.exact_values();
    for (int j = 0; j < sys.k(); ++j) {
      Theorem45Entry ent;
      ent.j = j;
      std::vector<Rational> grad(n);
      bool zero = true;
      for (std::size_t i = 0; i < n; ++i) {
        grad[i] = hs[j].derivative(i).eval(std::span<const Rational>(cv));
        if (!grad[i].is_zero()) zero = false;
      }
      ent.grad_zero = zero;
      RatMatrix shifted = k;
      for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= Rational(sys.degree(j));
      std::vector<Rational> row = shifted.apply_left(grad);
      ent.identity_ok = std::all_of(row.begin(), row.end(),
                                    [](const Rational& x) { return x.is_zero(); });
      ent.ham_zero = hs[j].eval(std::span<const Rational>(cv)).is_zero();
      ent.residual = 0.0;
      rep.entries.push_back(ent);
    }
  } else {
    rep.exact = false;
    CMatrix k = kov_matrix_numeric(fa, c);
    auto cv = c.values();
    for (int j = 0; j < sys.k(); ++j) {
      Theorem45Entry ent;
      ent.j = j;
      std::vector<ComplexF> grad(n);
      double gmax = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        grad[i] = hs[j].derivative(i).eval(std::span<const ComplexF>(cv));
        gmax = std::max(gmax, std::abs(grad[i]));
      }
      ent.grad_zero = gmax < 1e-8;
      double worst = 0.0;
      for (std::size_t col = 0; col < n; ++col) {
        ComplexF acc(0.0);
        for (std::size_t i = 0; i < n; ++i) acc += grad[i] * k.at(i, col);
        acc -= grad[col] * ComplexF(sys.degree(j));
        worst = std::max(worst, std::abs(acc));
      }
      ent.residual = worst;
      ent.identity_ok = worst < 1e-8 * std::max(1.0, gmax) * std::max(1.0, k.max_abs());
      ent.ham_zero = std::abs(hs[j].eval(std::span<const ComplexF>(cv))) < 1e-8;
      rep.entries.push_back(ent);
    }
  }
  return rep;
}

std::string signature_string(const KovalevskayaReport& report, double tol) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& e : report.exponents) {
    if (!first) os << ",";
    first = false;
    long long iv = 0;
    if (is_near_integer(e.value(), tol, iv))
      os << iv;
    else
      os << e.to_string();
  }
  os << ")";
  return os.str();
}

}  // namespace kova
