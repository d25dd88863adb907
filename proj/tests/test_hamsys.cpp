#include "kova/hamsys.hpp"

#include <doctest.h>

#include <random>

using namespace kova;

namespace {

MultiPoly rand_poly(const VarTablePtr& vars, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 4), exp(0, 2);
  std::uniform_int_distribution<long long> num(-5, 5);
  MultiPoly p = MultiPoly::zero(vars);
  for (int t = nterms(rng); t > 0; --t) {
    Exponents e(vars->size());
    for (auto& x : e) x = exp(rng);
    p.add_term(e, Rational(num(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("hamilton_equations for the catalog systems") {
  HamiltonianSystem p1(catalog("P1"));
  VectorField f = hamilton_equations(p1);
  REQUIRE(f.dim() == 2);
  auto vars = p1.vars();
  CHECK(f.components[0] == MultiPoly::variable(vars, 1));  // dq/dz = p
  MultiPoly expect = MultiPoly::variable(vars, 0).pow(2).scaled(Rational(6)) +
                     MultiPoly::variable(vars, 2);
  CHECK(f.components[1] == expect);  // dp/dz = 6q^2 + z

  // H = q p -> (q, -p)
  SystemDef tiny;
  tiny.id = "tiny";
  tiny.variables = {{"q", VarRole::Coordinate, 1}, {"p", VarRole::Momentum, 1}};
  tiny.hamiltonians = {{"H", "q*p", 2}};
  HamiltonianSystem ts(tiny);
  VectorField tf = hamilton_equations(ts);
  CHECK(tf.components[0] == MultiPoly::variable(ts.vars(), 0));
  CHECK(tf.components[1] == -MultiPoly::variable(ts.vars(), 1));

  CHECK_THROWS_AS(hamilton_equations(p1, 5), std::out_of_range);

  // First component of the P1_2_auto flow: dq1/dz = dH1/dp1 = 2 p2.
  HamiltonianSystem p12(catalog("P1_2_auto"));
  VectorField f12 = hamilton_equations(p12);
  CHECK(f12.components[0] ==
        MultiPoly::variable(p12.vars(), 3).scaled(Rational(2)));
}

TEST_CASE("split_principal matches the published non-principal parts") {
  HamiltonianSystem p2(catalog("P2"));
  auto [hp2, hn2] = split_principal(p2, 0);
  CHECK(hn2 == parse_expr("-alpha*q", p2.vars()));

  HamiltonianSystem p1(catalog("P1"));
  auto [hp1, hn1] = split_principal(p1, 0);
  CHECK(hn1.is_zero());

  HamiltonianSystem p4(catalog("P4"));
  auto [hp4, hn4] = split_principal(p4, 0);
  MultiPoly expect = parse_expr("-alpha*p + beta*q", p4.vars());
  CHECK(hn4 == expect);

  // Declared degree below the top monomial is a hard error.
  SystemDef bad;
  bad.id = "bad";
  bad.variables = {{"q", VarRole::Coordinate, 2}, {"p", VarRole::Momentum, 3}};
  bad.hamiltonians = {{"H", "p^2 + q^4", 6}};
  HamiltonianSystem bs(bad);
  CHECK_THROWS_AS(split_principal(bs, 0), std::domain_error);

  // Idempotence: splitting the principal part again changes nothing.
  auto [hp2b, hn2b] = split_principal(p2, 0);
  SystemDef again = catalog("P2");
  again.hamiltonians[0].expr = print_expr(hp2b);
  HamiltonianSystem sys2(again);
  auto [hp3, hn3] = split_principal(sys2, 0);
  CHECK(hp3 == hp2b.mapped_to(sys2.vars()));
  CHECK(hn3.is_zero());
}

TEST_CASE("poisson brackets") {
  HamiltonianSystem sys(catalog("P1_2_auto"));
  CHECK(poisson_bracket(sys.ham(0), sys.ham(1), sys).is_zero());
  CHECK(poisson_bracket(sys.ham(0), sys.ham(0), sys).is_zero());
  auto vars = sys.vars();
  CHECK(poisson_bracket(MultiPoly::variable(vars, 0), MultiPoly::variable(vars, 2), sys) ==
        MultiPoly::constant(vars, Rational(1)));

  // Bilinearity, antisymmetry and Jacobi on random polynomials.
  std::mt19937_64 rng(5);
  for (int it = 0; it < 25; ++it) {
    MultiPoly f = rand_poly(vars, rng), g = rand_poly(vars, rng), h = rand_poly(vars, rng);
    CHECK(poisson_bracket(f + g, h, sys) ==
          poisson_bracket(f, h, sys) + poisson_bracket(g, h, sys));
    CHECK(poisson_bracket(f, g, sys) == -poisson_bracket(g, f, sys));
    MultiPoly jac = poisson_bracket(f, poisson_bracket(g, h, sys), sys) +
                    poisson_bracket(g, poisson_bracket(h, f, sys), sys) +
                    poisson_bracket(h, poisson_bracket(f, g, sys), sys);
    CHECK(jac.is_zero());
  }
}

TEST_CASE("validation of the catalog flagship systems") {
  HamiltonianSystem p1(catalog("P1"));
  ValidationReport rep = validate(p1);
  for (const char* name : {"A1/H1[1]", "A2", "A3/K2", "A4/K3", "A5"}) CHECK(rep.passed(name));
  CHECK(rep.passed("S"));

  HamiltonianSystem p12(catalog("P1_2_auto"));
  ValidationReport rep12 = validate(p12);
  for (const char* name : {"H0", "A1/H1[1]", "A1/H1[2]", "H2", "S"}) CHECK(rep12.passed(name));

  // A system with a line of fixed points fails (S) with a witness.
  SystemDef degen;
  degen.id = "degen";
  degen.variables = {{"q1", VarRole::Coordinate, 1}, {"p1", VarRole::Momentum, 1}};
  degen.hamiltonians = {{"H", "q1^2*p1", 3}};
  HamiltonianSystem ds(degen);
  ValidationReport drep = validate(ds);
  const CheckResult* s = drep.find("S");
  REQUIRE(s);
  CHECK(s->status == CheckStatus::Fail);
  CHECK(s->witness.find("fixed point") != std::string::npos);
}

TEST_CASE("nonpositive-weight systems validate with K1 not applicable") {
  for (const char* id : {"MatP4", "H1210", "Hm1142"}) {
    HamiltonianSystem sys(catalog(id));
    ValidationReport rep = validate(sys);
    const CheckResult* k1 = rep.find("K1");
    REQUIRE(k1);
    CHECK(k1->status == CheckStatus::NotApplicable);
    CHECK(rep.passed("A1/H1[1]"));
    CHECK(rep.passed("A3/K2"));
    CHECK(rep.passed("A4/K3"));
  }
}

TEST_CASE("every catalog system passes its assumption battery") {
  for (const auto& id : catalog_ids()) {
    HamiltonianSystem sys(catalog(id));
    ValidationReport rep = validate(sys);
    for (int j = 0; j < sys.k(); ++j)
      CHECK_MESSAGE(rep.passed("A1/H1[" + std::to_string(j + 1) + "]"), id);
    CHECK_MESSAGE(rep.passed("A3/K2"), id);
    CHECK_MESSAGE(rep.passed("A4/K3"), id);
    CHECK_MESSAGE(rep.passed("H0"), id);
    if (sys.positive_weights()) {
      CHECK_MESSAGE(rep.passed("A2"), id);
      CHECK_MESSAGE(rep.passed("H2"), id);
    }
  }
}

TEST_CASE("component degree law wherever A1 holds") {
  for (const auto& id : catalog_ids()) {
    HamiltonianSystem sys(catalog(id));
    auto [hp, hn] = split_principal(sys, 0, false);
    std::vector<int> w = sys.variable_weights(false);
    VectorField f = hamilton_equations(sys);
    int m = sys.m();
    for (int i = 0; i < 2 * m; ++i) {
      MultiPoly comp = i < m ? hp.derivative(m + i) : -hp.derivative(i - m);
      for (const auto& [e, c] : comp.terms())
        CHECK(MultiPoly::term_degree(e, w) == 1 + f.weights[i]);
    }
  }
}

TEST_CASE("prop25 structural consequences") {
  HamiltonianSystem p1(catalog("P1"));
  ValidationReport rep = prop25_check(p1);
  CHECK(rep.passed("pairing(a_i+b_i=h-1)"));
  CHECK(rep.passed("r=h-2"));
  CHECK(rep.passed("deg(H^N)=1"));
  CHECK(rep.passed("min-weight"));

  HamiltonianSystem p2(catalog("P2"));
  CHECK(prop25_check(p2).passed("deg(H^N)=1"));

  HamiltonianSystem prod(catalog("P1xP1"));
  const CheckResult* mw = prop25_check(prod).find("min-weight");
  REQUIRE(mw);
  CHECK(mw->status == CheckStatus::NotApplicable);
}

TEST_CASE("euler identity") {
  HamiltonianSystem p12(catalog("P1_2_auto"));
  CHECK(euler_identity_check(p12, 0).is_zero());
  CHECK(euler_identity_check(p12, 1).is_zero());

  for (const char* id : {"P1_2_auto", "P21_2_auto", "P22_2_auto", "P4_2_auto", "P1xP1",
                         "P2xP2", "P4xP4", "H2323_auto", "MatP1_auto", "Cosgrove_auto"}) {
    HamiltonianSystem sys(catalog(id));
    for (int j = 0; j < sys.k(); ++j) CHECK_MESSAGE(euler_identity_check(sys, j).is_zero(), id);
  }

  // Inhomogeneous input leaves the lower-degree residual behind.
  SystemDef mix;
  mix.id = "mix";
  mix.variables = {{"q", VarRole::Coordinate, 2}, {"p", VarRole::Momentum, 3}};
  mix.hamiltonians = {{"H", "q^3 + q^2", 6}};
  HamiltonianSystem ms(mix);
  MultiPoly resid = euler_identity_check(ms, 0);
  CHECK(resid == MultiPoly::variable(ms.vars(), 0).pow(2).scaled(Rational(-2)));
}
