#include "kova/laurent.hpp"

#include <doctest.h>

#include <algorithm>

using namespace kova;

namespace {

std::vector<Rational> rv(std::initializer_list<long long> xs) {
  std::vector<Rational> v;
  for (long long x : xs) v.push_back(Rational(x));
  return v;
}

MultiPoly coeff_of(const LaurentSeries& s, const std::string& component, int j) {
  for (std::size_t i = 0; i < s.component_names.size(); ++i)
    if (s.component_names[i] == component) return s.coeff[i].at(j);
  throw std::out_of_range("component");
}

MultiPoly expect_in_ring(const LaurentSeries& s, const std::string& expr) {
  return parse_expr(expr, s.param_ring);
}

}  // namespace

TEST_CASE("P1 series reproduces the printed coefficients") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField full = hamilton_equations(p1);
  VectorField fa = truncate_autonomous(full);
  Balance b = balance_from_exact(fa, rv({1, -2}));

  LaurentSeries s = build_series(full, b, 7);
  REQUIRE_FALSE(s.obstructed_at);

  // Components are (q, p) with pole orders (2, 3).
  CHECK(coeff_of(s, "q", 0) == expect_in_ring(s, "1"));
  CHECK(coeff_of(s, "p", 0) == expect_in_ring(s, "0 - 2"));
  for (int j : {1, 2, 3}) {
    CHECK(coeff_of(s, "q", j).is_zero());
    CHECK(coeff_of(s, "p", j).is_zero());
  }
  // x-coefficient at T^1 is -z0/5; y-coefficient at T^2 is -z0/10.
  CHECK(coeff_of(s, "p", 4) == expect_in_ring(s, "0 - 1/5*z0"));
  CHECK(coeff_of(s, "q", 4) == expect_in_ring(s, "0 - 1/10*z0"));
  CHECK(coeff_of(s, "p", 5) == expect_in_ring(s, "0 - 1/2"));
  CHECK(coeff_of(s, "q", 5) == expect_in_ring(s, "0 - 1/6"));

  // The only resonance sits at j = 6 = h with a single parameter.
  REQUIRE(s.resonances.size() == 1);
  CHECK(s.resonances[0].j == 6);
  CHECK(s.resonances[0].params.size() == 1);
  CHECK(s.free_param_count() == 1);

  // The j = 6 coefficients depend on the adjoined parameter.
  std::string pj6 = print_expr(coeff_of(s, "p", 6));
  CHECK(pj6.find("s1") != std::string::npos);
}

TEST_CASE("P1 series with the pole location fixed at zero") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField full = hamilton_equations(p1);
  VectorField fa = truncate_autonomous(full);
  Balance b = balance_from_exact(fa, rv({1, -2}));

  SeriesOptions opts;
  opts.fixed["z0"] = Rational(0);
  LaurentSeries s = build_series(full, b, 7, opts);
  REQUIRE_FALSE(s.obstructed_at);
  CHECK(coeff_of(s, "p", 4).is_zero());
  CHECK(coeff_of(s, "q", 4).is_zero());
  CHECK(coeff_of(s, "p", 5) == expect_in_ring(s, "0-1/2"));
  REQUIRE(s.resonances.size() == 1);
  CHECK(s.resonances[0].j == 6);
}

TEST_CASE("series preconditions") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField full = hamilton_equations(p1);
  VectorField fa = truncate_autonomous(full);
  Balance b = balance_from_exact(fa, rv({1, -2}));
  CHECK_THROWS_AS(build_series(full, b, 0), std::invalid_argument);

  LaurentSeries shallow = build_series(full, b, 2);
  CHECK(shallow.order_below_max_exponent);

  Balance numeric;
  numeric.c = {Scalar::from_complex(ComplexF(1.0)), Scalar::from_complex(ComplexF(-2.0))};
  CHECK_THROWS_AS(build_series(full, numeric, 5), std::invalid_argument);
}

TEST_CASE("residual order bound") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField full = hamilton_equations(p1);
  VectorField fa = truncate_autonomous(full);
  Balance b = balance_from_exact(fa, rv({1, -2}));

  LaurentSeries s = build_series(full, b, 7);
  std::vector<int> orders = residual_order(full, s);
  REQUIRE(orders.size() == 2);
  CHECK(orders[0] >= -2 + 7);  // q component
  CHECK(orders[1] >= -3 + 7);  // p component

  LaurentSeries s1 = build_series(full, b, 8);
  std::vector<int> o1 = residual_order(full, s1);
  CHECK(o1[0] >= -2 + 8);
  CHECK(o1[1] >= -3 + 8);

  LaurentSeries fixed = build_series(full, b, 7, [] {
    SeriesOptions o;
    o.fixed["z0"] = Rational(3, 2);
    return o;
  }());
  std::vector<int> of = residual_order(full, fixed);
  CHECK(of[0] >= 5);
  CHECK(of[1] >= 4);
}

TEST_CASE("P4_2 principal balances carry three parameters without obstruction") {
  HamiltonianSystem sys(catalog("P4_2_auto"));
  VectorField fa = truncate_autonomous(hamilton_equations(sys));
  std::vector<Balance> bals = find_balances(fa);
  int principal_seen = 0;
  for (const auto& b : bals) {
    KovalevskayaReport rep = exponents(fa, b);
    if (!rep.principal) continue;
    ++principal_seen;
    LaurentSeries s = build_series(fa, b, 5);
    REQUIRE_FALSE(s.obstructed_at);
    CHECK(s.free_param_count() == 3);
    std::vector<int> rj;
    for (const auto& r : s.resonances) rj.push_back(r.j);
    CHECK(rj == std::vector<int>{1, 2, 4});
  }
  CHECK(principal_seen == 3);
}

TEST_CASE("resonance positions equal the positive integer exponents") {
  for (const char* id : {"P1", "P2", "P4", "P1_2_auto", "P21_2_auto", "P22_2_auto",
                         "P4_2_auto", "MatP1_auto", "P1xP1", "P2xP2", "P4xP4"}) {
    HamiltonianSystem sys(catalog(id));
    VectorField fa = truncate_autonomous(hamilton_equations(sys));
    for (const auto& b : find_balances(fa)) {
      if (!b.all_exact()) continue;
      KovalevskayaReport rep = exponents(fa, b);
      if (!rep.exact) continue;
      std::vector<int> expected;
      for (const auto& e : rep.exponents)
        if (e.rat.is_integer() && e.rat > Rational(0))
          expected.push_back(static_cast<int>(e.rat.numerator().convert_to<long long>()));
      std::sort(expected.begin(), expected.end());
      expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
      int order = expected.empty() ? 3 : expected.back();
      LaurentSeries s = build_series(fa, b, order);
      if (s.obstructed_at) continue;  // obstruction cuts the list short
      std::vector<int> got;
      for (const auto& r : s.resonances) got.push_back(r.j);
      CHECK_MESSAGE(got == expected, id);
    }
  }
}

TEST_CASE("painleve_test verdicts") {
  CHECK(painleve_test(HamiltonianSystem(catalog("P1"))).kind == PainleveVerdict::Kind::Pass);
  CHECK(painleve_test(HamiltonianSystem(catalog("P1_2_auto"))).kind ==
        PainleveVerdict::Kind::Pass);
  CHECK(painleve_test(HamiltonianSystem(catalog("P2"))).kind == PainleveVerdict::Kind::Pass);

  // One-dimensional sanity case: x' = x^2 with weight 1.
  auto vars = make_vartable({"x"});
  VectorField f = make_field(vars, {MultiPoly::variable(vars, 0).pow(2)}, {1});
  PainleveVerdict v = painleve_test(f);
  CHECK(v.kind == PainleveVerdict::Kind::Pass);
  REQUIRE(v.reports.size() == 1);
  REQUIRE(v.reports[0].balance.all_exact());
  CHECK(v.reports[0].balance.exact_values() == rv({-1}));
  CHECK(signature_string(v.reports[0]) == "(-1)");
}

TEST_CASE("free parameter count matches the phase dimension minus one") {
  for (const char* id : {"P1", "P2", "P1_2_auto", "P22_2_auto", "P4_2_auto"}) {
    HamiltonianSystem sys(catalog(id));
    PainleveVerdict v = painleve_test(sys);
    REQUIRE_MESSAGE(v.kind == PainleveVerdict::Kind::Pass, id);
    REQUIRE(v.witness.has_value());
    const Balance& b = v.reports[*v.witness].balance;
    VectorField fa = truncate_autonomous(hamilton_equations(sys));
    long long maxexp = 0;
    for (const auto& e : v.reports[*v.witness].exponents)
      if (e.exact && e.rat.is_integer() && e.rat > Rational(0))
        maxexp = std::max(maxexp, e.rat.numerator().convert_to<long long>());
    LaurentSeries s = build_series(sys, b, static_cast<int>(maxexp));
    CHECK_MESSAGE(s.free_param_count() == static_cast<int>(fa.dim()) - 1, id);
  }
}
