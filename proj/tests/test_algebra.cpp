#include "kova/expr.hpp"
#include "kova/numeric.hpp"
#include "kova/ratmatrix.hpp"
#include "kova/unipoly.hpp"

#include <doctest.h>

#include <random>

using namespace kova;

namespace {

Rational Q(long long n, long long d = 1) { return Rational(n, d); }

UniPoly upoly(std::initializer_list<long long> coeffs_low_first) {
  std::vector<Rational> v;
  for (long long c : coeffs_low_first) v.emplace_back(c);
  return UniPoly(std::move(v));
}

MultiPoly random_poly(const VarTablePtr& vars, std::mt19937_64& rng, int max_terms = 4,
                      int max_exp = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_exp);
  std::uniform_int_distribution<long long> num(-6, 6);
  std::uniform_int_distribution<long long> den(1, 4);
  MultiPoly p = MultiPoly::zero(vars);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Exponents e(vars->size());
    for (auto& x : e) x = exp(rng);
    p.add_term(e, Rational(num(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("rational invariants and arithmetic") {
  CHECK(Q(2, 4) == Q(1, 2));
  CHECK(Rational(BigInt(-6), BigInt(-8)) == Q(3, 4));
  CHECK(Q(1, -2).denominator() == 1 * 2);
  CHECK(Q(1, -2).numerator() == -1);
  CHECK(Q(0, 7).to_string() == "0");
  CHECK((Q(1, 2) + Q(1, 3)) == Q(5, 6));
  CHECK((Q(1, 2) * Q(2, 3)) == Q(1, 3));
  CHECK(Q(-7, 3).abs() == Q(7, 3));
  CHECK(Q(2, 3).pow(-2) == Q(9, 4));
  CHECK_THROWS_AS(Q(1).operator/=(Q(0)), std::domain_error);
  CHECK(Rational::from_string("-22/7") == Q(-22, 7));
}

TEST_CASE("rational reconstruction and exact roots") {
  Rational r;
  REQUIRE(rational_reconstruct(0.5, 1000000, r));
  CHECK(r == Q(1, 2));
  REQUIRE(rational_reconstruct(-2.0, 1000000, r));
  CHECK(r == Q(-2));
  REQUIRE(rational_reconstruct(1.0 / 3.0, 1000000, r));
  CHECK(r == Q(1, 3));
  CHECK_FALSE(rational_reconstruct(std::sqrt(2.0), 1000000, r));

  Rational root;
  REQUIRE(rational_nth_root(Q(27, 8), 3, root));
  CHECK(root == Q(3, 2));
  REQUIRE(rational_nth_root(Q(-8), 3, root));
  CHECK(root == Q(-2));
  CHECK_FALSE(rational_nth_root(Q(-4), 2, root));
  CHECK_FALSE(rational_nth_root(Q(2), 2, root));
  REQUIRE(rational_nth_root(Q(1), 5, root));
  CHECK(root == Q(1));
}

TEST_CASE("multipoly arithmetic matches hand expansion") {
  auto vars = make_vartable({"q", "p"});
  MultiPoly q = MultiPoly::variable(vars, 0);
  MultiPoly p = MultiPoly::variable(vars, 1);

  // Monomial product.
  CHECK(print_expr(q.pow(3) * p.pow(2)) == "q^3*p^2");

  // Cancellation removes zero terms.
  MultiPoly diff = p.pow(2) - q.pow(4);
  CHECK((diff + q.pow(4)) == p.pow(2));
  CHECK((diff + q.pow(4)).term_count() == 1);

  // (q+p)^2 = q^2 + 2qp + p^2.
  MultiPoly sq = (q + p).pow(2);
  MultiPoly expect = q.pow(2) + (q * p).scaled(Q(2)) + p.pow(2);
  CHECK(sq == expect);
}

TEST_CASE("multipoly distributivity on random inputs") {
  auto vars = make_vartable({"x", "y", "z"});
  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; ++it) {
    MultiPoly a = random_poly(vars, rng), b = random_poly(vars, rng), c = random_poly(vars, rng);
    CHECK(((a + b) * c) == (a * c + b * c));
  }
}

TEST_CASE("multipoly rejects mismatched tables") {
  auto v1 = make_vartable({"x"});
  auto v2 = make_vartable({"y"});
  MultiPoly a = MultiPoly::variable(v1, 0);
  MultiPoly b = MultiPoly::variable(v2, 0);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("unipoly long division") {
  // (T^4 - 1) / (T^2 - 1) = T^2 + 1 rem 0
  auto [q1, r1] = unipoly_divide(upoly({-1, 0, 0, 0, 1}), upoly({-1, 0, 1}));
  CHECK(q1 == upoly({1, 0, 1}));
  CHECK(r1.is_zero());

  auto [q2, r2] = unipoly_divide(upoly({1, 0, 1}), upoly({1, 0, 1}));
  CHECK(q2 == upoly({1}));
  CHECK(r2.is_zero());

  // (T^4+2T^3+2T^2+2T+1) / (T^2+T+1) = T^2+T rem T+1  (from weight (1,3;5))
  auto [q3, r3] = unipoly_divide(upoly({1, 2, 2, 2, 1}), upoly({1, 1, 1}));
  CHECK(q3 == upoly({0, 1, 1}));
  CHECK(r3 == upoly({1, 1}));

  CHECK_THROWS_AS(unipoly_divide(upoly({1}), UniPoly()), std::domain_error);
}

TEST_CASE("unipoly divide-recombine on random inputs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> deg(0, 6);
  std::uniform_int_distribution<long long> coef(-5, 5);
  auto rand_poly = [&](int d) {
    std::vector<Rational> v(d + 1);
    for (auto& x : v) x = Rational(coef(rng));
    return UniPoly(std::move(v));
  };
  for (int it = 0; it < 80; ++it) {
    UniPoly num = rand_poly(deg(rng));
    UniPoly den = rand_poly(deg(rng));
    if (den.is_zero()) continue;
    auto [q, r] = unipoly_divide(num, den);
    CHECK((q * den + r) == num);
    CHECK(r.degree() < den.degree());
  }
}

TEST_CASE("char_poly exact values") {
  RatMatrix m(2, 2);
  m.at(0, 0) = Q(3); m.at(0, 1) = Q(12);
  m.at(1, 0) = Q(1); m.at(1, 1) = Q(2);
  CHECK(char_poly(m) == upoly({-6, -5, 1}));

  CHECK(char_poly(RatMatrix::identity(2)) == upoly({1, -2, 1}));
  CHECK(char_poly(RatMatrix(3, 3)) == upoly({0, 0, 0, 1}));

  RatMatrix rect(2, 3);
  CHECK_THROWS_AS(char_poly(rect), std::invalid_argument);
}

TEST_CASE("char_poly of triangular matrices is the product of diagonal factors") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long long> coef(-4, 4);
  for (int it = 0; it < 40; ++it) {
    std::size_t n = 1 + it % 4;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) m.at(i, j) = Rational(coef(rng));
    UniPoly expect = UniPoly::constant(Q(1));
    for (std::size_t i = 0; i < n; ++i) expect = expect * UniPoly({-m.at(i, i), Q(1)});
    CHECK(char_poly(m) == expect);
  }
}

TEST_CASE("rational_roots") {
  // lambda^2 - 5 lambda - 6 -> {-1, 6}
  RationalRoots rr = rational_roots(upoly({-6, -5, 1}));
  REQUIRE(rr.roots.size() == 2);
  CHECK(rr.roots[0] == std::pair<Rational, int>{Q(-1), 1});
  CHECK(rr.roots[1] == std::pair<Rational, int>{Q(6), 1});
  CHECK(rr.cofactor.degree() == 0);

  RationalRoots none = rational_roots(upoly({1, 0, 1}));
  CHECK(none.roots.empty());
  CHECK(none.cofactor == upoly({1, 0, 1}));

  // (x+3)(x+1)(x-8)(x-10) expanded
  UniPoly p = UniPoly({Q(3), Q(1)}) * UniPoly({Q(1), Q(1)}) * UniPoly({Q(-8), Q(1)}) *
              UniPoly({Q(-10), Q(1)});
  RationalRoots four = rational_roots(p);
  REQUIRE(four.roots.size() == 4);
  CHECK(four.roots[0].first == Q(-3));
  CHECK(four.roots[1].first == Q(-1));
  CHECK(four.roots[2].first == Q(8));
  CHECK(four.roots[3].first == Q(10));

  CHECK_THROWS_AS(rational_roots(UniPoly()), std::domain_error);
}

TEST_CASE("rational_roots accounts for the full degree") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> coef(-4, 4);
  std::uniform_int_distribution<int> deg(1, 6);
  for (int it = 0; it < 60; ++it) {
    int d = deg(rng);
    std::vector<Rational> v(d + 1);
    for (auto& x : v) x = Rational(coef(rng));
    UniPoly p(std::move(v));
    if (p.is_zero()) continue;
    RationalRoots rr = rational_roots(p);
    int mults = 0;
    for (const auto& [root, m] : rr.roots) {
      mults += m;
      CHECK(p.eval(root).is_zero());
    }
    CHECK(mults + std::max(rr.cofactor.degree(), 0) == p.degree());
    for (const auto& [root, m] : rr.roots)
      CHECK_FALSE(rr.cofactor.eval(root).is_zero());
  }
}

TEST_CASE("solve_linear outcomes") {
  auto ring = make_vartable({"s"});
  auto constant = [&](long long v) { return MultiPoly::constant(ring, Q(v)); };

  RatMatrix eye = RatMatrix::identity(2);
  LinearSolveResult u = solve_linear(eye, std::vector<MultiPoly>{constant(1), constant(2)});
  REQUIRE(u.kind == LinearSolveResult::Kind::Unique);
  CHECK(u.solution[0] == constant(1));
  CHECK(u.solution[1] == constant(2));

  RatMatrix a(2, 2);
  a.at(1, 1) = Q(1);
  LinearSolveResult par = solve_linear(a, std::vector<MultiPoly>{constant(0), constant(5)});
  REQUIRE(par.kind == LinearSolveResult::Kind::Parametric);
  REQUIRE(par.kernel.size() == 1);
  CHECK(par.kernel[0] == std::vector<Rational>{Q(1), Q(0)});
  CHECK(par.solution[1] == constant(5));

  MultiPoly s = MultiPoly::variable(ring, 0);
  LinearSolveResult bad = solve_linear(a, std::vector<MultiPoly>{s, constant(5)});
  REQUIRE(bad.kind == LinearSolveResult::Kind::Inconsistent);
  REQUIRE(bad.residuals.size() == 1);
  CHECK(bad.residuals[0] == s);

  CHECK_THROWS_AS(solve_linear(a, std::vector<MultiPoly>{s}), std::invalid_argument);
}

TEST_CASE("numeric_eigen matches known spectra") {
  CMatrix m(2, 2);
  m.at(0, 0) = 3.0; m.at(0, 1) = 12.0;
  m.at(1, 0) = 1.0; m.at(1, 1) = 2.0;
  auto eig = numeric_eigen(m);
  REQUIRE(eig.size() == 2);
  CHECK(std::abs(eig[0] - ComplexF(-1.0)) < 1e-10);
  CHECK(std::abs(eig[1] - ComplexF(6.0)) < 1e-10);

  CMatrix d(2, 2);
  d.at(0, 0) = 2.0; d.at(1, 1) = -7.0;
  eig = numeric_eigen(d);
  CHECK(std::abs(eig[0] - ComplexF(-7.0)) < 1e-12);
  CHECK(std::abs(eig[1] - ComplexF(2.0)) < 1e-12);

  CMatrix rot(2, 2);
  rot.at(0, 1) = -1.0; rot.at(1, 0) = 1.0;
  eig = numeric_eigen(rot);
  REQUIRE(eig.size() == 2);
  CHECK(std::abs(eig[0] - ComplexF(0.0, -1.0)) < 1e-10);
  CHECK(std::abs(eig[1] - ComplexF(0.0, 1.0)) < 1e-10);
}

TEST_CASE("numeric_eigen agrees with exact rational spectra") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long long> coef(-3, 3);
  for (int it = 0; it < 30; ++it) {
    std::size_t n = 2 + it % 3;
    // Triangular with distinct diagonal entries: the spectrum is rational and
    // well separated, so the 1e-8 agreement bound is meaningful.
    RatMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) t.at(i, j) = Rational(coef(rng));
    for (std::size_t i = 0; i < n; ++i) t.at(i, i) = Rational(2 * (long long)i + coef(rng) % 2);
    UniPoly cp = char_poly(t);
    RationalRoots rr = rational_roots(cp);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = t.at(i, j).to_double();
    std::vector<ComplexF> eig = numeric_eigen(m);
    std::vector<double> expect;
    for (const auto& [root, mult] : rr.roots)
      for (int k = 0; k < mult; ++k) expect.push_back(root.to_double());
    std::sort(expect.begin(), expect.end());
    REQUIRE(eig.size() == expect.size());
    for (std::size_t i = 0; i < eig.size(); ++i) {
      CHECK(std::abs(eig[i].real() - expect[i]) < 1e-8);
      CHECK(std::abs(eig[i].imag()) < 1e-8);
    }
  }
}
