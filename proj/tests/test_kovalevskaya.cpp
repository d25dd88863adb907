#include "kova/kovalevskaya.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace kova;

namespace {

std::vector<Rational> rv(std::initializer_list<long long> xs) {
  std::vector<Rational> v;
  for (long long x : xs) v.push_back(Rational(x));
  return v;
}

std::multiset<long long> int_exponents(const KovalevskayaReport& rep) {
  std::multiset<long long> out;
  for (const auto& e : rep.exponents) {
    ComplexF v = e.value();
    REQUIRE(std::abs(v.imag()) < 1e-6);
    long long r = std::llround(v.real());
    REQUIRE(std::abs(v.real() - r) < 1e-6);
    out.insert(r);
  }
  return out;
}

// Exhaustive elimination oracle for 2-dim balance sets: substitute the
// first balance relation into the second and solve the resulting univariate
// polynomial by rational root search.
std::vector<std::pair<Rational, Rational>> p1_balances_oracle() {
  // -2 c_q = c_p, -3 c_p = 6 c_q^2  =>  6 c_q = 6 c_q^2, c_q != 0.
  UniPoly u({Rational(-6), Rational(6)});  // 6 c_q^2 - 6 c_q, deflated by c_q
  RationalRoots rr = rational_roots(u);
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& [root, mult] : rr.roots)
    if (!root.is_zero()) out.emplace_back(root, Rational(-2) * root);
  return out;
}

}  // namespace

TEST_CASE("truncate_autonomous drops z and non-principal terms") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField fa = truncate_autonomous(hamilton_equations(p1));
  REQUIRE(fa.dim() == 2);
  CHECK(fa.autonomous_reduced());
  CHECK(print_expr(fa.components[0]) == "p");
  CHECK(print_expr(fa.components[1]) == "6*q^2");

  // Already-autonomous fields pass through unchanged.
  VectorField again = truncate_autonomous(fa);
  CHECK(again.components[0] == fa.components[0]);

  HamiltonianSystem p2(catalog("P2"));
  VectorField fa2 = truncate_autonomous(hamilton_equations(p2));
  CHECK(print_expr(fa2.components[1]) == "2*q^3");
}

TEST_CASE("find_balances on the first Painleve equation") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField fa = truncate_autonomous(hamilton_equations(p1));
  BalanceOptions opts;
  opts.seeds = 200;
  std::vector<Balance> bals = find_balances(fa, opts);
  REQUIRE(bals.size() == 1);
  REQUIRE(bals[0].all_exact());
  CHECK(bals[0].exact_values() == rv({1, -2}));  // (q, p) order
  CHECK(bals[0].residual == 0.0);

  // Cross-check against the elimination oracle.
  auto oracle = p1_balances_oracle();
  REQUIRE(oracle.size() == 1);
  CHECK(oracle[0].first == Rational(1));
  CHECK(oracle[0].second == Rational(-2));
}

TEST_CASE("find_balances on the 4-dim first hierarchy") {
  HamiltonianSystem sys(catalog("P1_2_auto"));
  VectorField fa = truncate_autonomous(hamilton_equations(sys));
  std::vector<Balance> bals = find_balances(fa);
  REQUIRE(bals.size() == 2);
  REQUIRE(bals[0].all_exact());
  REQUIRE(bals[1].all_exact());
  CHECK(bals[0].exact_values() == rv({1, 1, 1, -1}));
  CHECK(bals[1].exact_values() == rv({3, 0, 27, -3}));
}

TEST_CASE("kov_matrix and exponents for P1") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField fa = truncate_autonomous(hamilton_equations(p1));
  Balance b = balance_from_exact(fa, rv({1, -2}));
  RatMatrix k = kov_matrix_exact(fa, b);
  // In (q,p) order with weights (2,3): [[2,1],[12,3]].
  CHECK(k.at(0, 0) == Rational(2));
  CHECK(k.at(0, 1) == Rational(1));
  CHECK(k.at(1, 0) == Rational(12));
  CHECK(k.at(1, 1) == Rational(3));

  KovalevskayaReport rep = exponents(fa, b);
  CHECK(rep.exact);
  CHECK(int_exponents(rep) == std::multiset<long long>{-1, 6});
  CHECK(rep.principal);
  CHECK(rep.minus_one_eigvec_ok);
  CHECK(rep.semisimple == 1);
  CHECK(signature_string(rep) == "(-1,6)");

  CHECK_THROWS_AS(balance_from_exact(fa, rv({1, 1})), std::invalid_argument);
}

TEST_CASE("a linear field with f = -a x has the zero Kovalevskaya matrix") {
  auto vars = make_vartable({"x", "y"});
  std::vector<MultiPoly> comps{MultiPoly::variable(vars, 0).scaled(Rational(-2)),
                               MultiPoly::variable(vars, 1).scaled(Rational(-3))};
  VectorField f = make_field(vars, comps, {2, 3});
  Balance b = balance_from_exact(f, rv({5, 7}));
  RatMatrix k = kov_matrix_exact(f, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(k.at(i, j) == Rational(0));
}

TEST_CASE("P1_2_auto exponents at both balances") {
  HamiltonianSystem sys(catalog("P1_2_auto"));
  VectorField fa = truncate_autonomous(hamilton_equations(sys));
  Balance c1 = balance_from_exact(fa, rv({1, 1, 1, -1}));
  Balance c2 = balance_from_exact(fa, rv({3, 0, 27, -3}));

  KovalevskayaReport r1 = exponents(fa, c1);
  CHECK(int_exponents(r1) == std::multiset<long long>{-1, 2, 5, 8});
  CHECK(r1.principal);

  KovalevskayaReport r2 = exponents(fa, c2);
  CHECK(int_exponents(r2) == std::multiset<long long>{-3, -1, 8, 10});
  CHECK_FALSE(r2.principal);
  CHECK(signature_string(r2) == "(-3,-1,8,10)");

  CHECK(pairing_check(r1, 8));
  CHECK(pairing_check(r2, 8));
}

TEST_CASE("pairing_check") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField fa = truncate_autonomous(hamilton_equations(p1));
  KovalevskayaReport rep = exponents(fa, balance_from_exact(fa, rv({1, -2})));
  CHECK(pairing_check(rep, 6));

  // {-1, 3} with h = 6 must fail: 3 is unpaired.
  KovalevskayaReport fake = rep;
  fake.exponents = {Scalar::from_rational(Rational(-1)), Scalar::from_rational(Rational(3))};
  CHECK_FALSE(pairing_check(fake, 6));
}

TEST_CASE("theorem45 on the worked 4-dim example") {
  HamiltonianSystem sys(catalog("P1_2_auto"));
  VectorField fa = truncate_autonomous(hamilton_equations(sys));
  Balance c1 = balance_from_exact(fa, rv({1, 1, 1, -1}));
  Balance c2 = balance_from_exact(fa, rv({3, 0, 27, -3}));

  Theorem45Report t1 = theorem45_check(sys, c1);
  REQUIRE(t1.exact);
  REQUIRE(t1.entries.size() == 2);
  CHECK_FALSE(t1.entries[0].grad_zero);
  CHECK(t1.entries[1].grad_zero);  // dH2(c1) = 0
  CHECK(t1.all_ok());

  Theorem45Report t2 = theorem45_check(sys, c2);
  CHECK_FALSE(t2.entries[0].grad_zero);
  CHECK_FALSE(t2.entries[1].grad_zero);
  CHECK(t2.all_ok());  // both gradients satisfy the left-eigenvector identity
}

TEST_CASE("balance counts and signatures match the published table") {
  struct Row {
    const char* id;
    std::vector<std::pair<std::string, int>> expect;
  };
  // Signature groups ordered lexicographically descending.
  std::vector<Row> rows = {
      {"P1_2", {{"(-1,2,5,8)", 1}, {"(-3,-1,8,10)", 1}}},
      {"Cosgrove", {{"(-1,3,4,8)", 1}, {"(-5,-1,8,12)", 1}}},
      {"P21_2", {{"(-1,2,3,6)", 2}, {"(-3,-1,6,8)", 2}}},
      {"MatP1", {{"(-1,2,3,6)", 2}, {"(-2,-1,6,7)", 1}, {"(-7,-1,6,12)", 1}}},
      {"H2323", {{"(-1,1,4,6)", 1}, {"(-3,-1,6,8)", 2}}},
      {"P22_2", {{"(-1,1,3,5)", 2}, {"(-2,-1,5,6)", 3}}},
      {"P4_2", {{"(-1,1,2,4)", 3}, {"(-2,-1,4,5)", 5}}},
  };
  for (const auto& row : rows) {
    HamiltonianSystem sys(catalog(row.id));
    VectorField fa = truncate_autonomous(hamilton_equations(sys));
    std::vector<Balance> bals = find_balances(fa);
    std::map<std::string, int> got;
    for (const auto& b : bals) ++got[signature_string(exponents(fa, b))];
    std::map<std::string, int> expect(row.expect.begin(), row.expect.end());
    CHECK_MESSAGE(got == expect, row.id);
  }
}

TEST_CASE("minus-one eigenvector identity across the catalog") {
  for (const auto& id : catalog_ids()) {
    HamiltonianSystem sys(catalog(id));
    VectorField fa = truncate_autonomous(hamilton_equations(sys));
    BalanceOptions opts;
    opts.seeds = 400;
    for (const auto& b : find_balances(fa, opts)) {
      KovalevskayaReport rep = exponents(fa, b);
      CHECK_MESSAGE(rep.minus_one_eigvec_ok, id);
    }
  }
}
