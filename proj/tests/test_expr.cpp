#include "kova/expr.hpp"
#include "kova/hamsys.hpp"
#include "kova/systemdef.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace kova;

TEST_CASE("parse_expr on the first Painleve Hamiltonian") {
  auto vars = make_vartable({"q", "p", "z"});
  MultiPoly h = parse_expr("1/2*p^2 - 2*q^3 - z*q", vars);
  CHECK(h.term_count() == 3);
  CHECK(print_expr(h) == "-2*q^3 + 1/2*p^2 - q*z");
  CHECK(parse_expr(print_expr(h), vars) == h);
}

TEST_CASE("parse_expr edge cases") {
  auto vars = make_vartable({"q", "p"});
  CHECK(parse_expr("0", vars).is_zero());
  CHECK(print_expr(parse_expr("q^3*p^2", vars)) == "q^3*p^2");
  CHECK_THROWS_AS(parse_expr("q^(1/2)", vars), ParseError);
  CHECK_THROWS_AS(parse_expr("q^-1", vars), ParseError);
  CHECK_THROWS_AS(parse_expr("q*", vars), ParseError);
  CHECK_THROWS_AS(parse_expr("w + 1", vars), ParseError);
  CHECK_THROWS_AS(parse_expr("q @ p", vars), ParseError);
  // Precedence: power binds tighter than unary minus.
  CHECK(parse_expr("-q^2", vars) == (-MultiPoly::variable(vars, 0).pow(2)));
  // Parenthesized rational exponents are rejected, fractions as atoms fine.
  CHECK(parse_expr("(1/2)*q", vars) == MultiPoly::variable(vars, 0).scaled(Rational(1, 2)));
}

TEST_CASE("catalog round-trips through print and parse") {
  for (const auto& id : catalog_ids()) {
    SystemDef def = catalog(id);
    std::vector<std::string> names;
    for (const auto& v : def.variables) names.push_back(v.name);
    auto vars = make_vartable(names);
    for (const auto& h : def.hamiltonians) {
      MultiPoly p = parse_expr(h.expr, vars);
      CHECK(parse_expr(print_expr(p), vars) == p);
    }
  }
}

TEST_CASE("catalog entries carry the published weights") {
  SystemDef p1 = catalog("P1");
  REQUIRE(p1.variables.size() == 3);
  CHECK(p1.variables[0].name == "q");
  CHECK(p1.variables[0].weight == 2);
  CHECK(p1.variables[1].weight == 3);
  CHECK(p1.variables[2].weight == 4);
  CHECK(p1.hamiltonians[0].degree == 6);

  SystemDef auto2 = catalog("P1_2_auto");
  HamiltonianSystem sys(auto2);
  CHECK(sys.qweights() == std::vector<int>{2, 4});
  CHECK(sys.pweights() == std::vector<int>{5, 3});
  CHECK(sys.degrees() == std::vector<int>{8, 10});
  // The generated autonomous variant equals the hand-written pair.
  auto vars = sys.vars();
  MultiPoly h1 = parse_expr("2*p2*p1 + 3*p2^2*q1 + q1^4 - q1^2*q2 - q2^2", vars);
  MultiPoly h2 = parse_expr("p1^2 + 2*p2*p1*q1 - q1^5 + p2^2*q2 + 3*q1^3*q2 - 2*q1*q2^2", vars);
  CHECK(sys.ham(0) == h1);
  CHECK(sys.ham(1) == h2);

  CHECK_THROWS_WITH_AS(catalog("nope"), doctest::Contains("available"), std::invalid_argument);
}

TEST_CASE("system file loading") {
  const char* path = "test_system_p1.kova";
  {
    std::ofstream f(path);
    f << "system P1\n"
      << "var q q weight 2\n"
      << "var p p weight 3\n"
      << "var z z weight 4\n"
      << "ham H degree 6 = 1/2*p^2 - 2*q^3 - z*q\n"
      << "end\n";
  }
  SystemDef def = load_system_file(path);
  SystemDef ref = catalog("P1");
  CHECK(def.serialize() == ref.serialize());
  CHECK(def.digest() == ref.digest());
  std::remove(path);

  CHECK_THROWS_AS(parse_system_text(""), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_system_text("system X\nvar q1 q weight 1\n"
                                         "ham H degree 2 = q1\nend\n"),
                       doctest::Contains("unpaired"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_system_text("system X\nvar q q weight 1\nvar q p weight 1\n"
                                         "ham H degree 2 = q\nend\n"),
                       doctest::Contains("duplicate"), std::invalid_argument);
}

TEST_CASE("every catalog principal part is quasihomogeneous of its declared degree") {
  for (const auto& id : catalog_ids()) {
    HamiltonianSystem sys(catalog(id));
    for (int j = 0; j < sys.k(); ++j) {
      auto [hp, hn] = split_principal(sys, j, false);
      CHECK_FALSE(hp.is_zero());
      std::vector<int> w = sys.variable_weights(false);
      for (const auto& [e, c] : hp.terms())
        CHECK(MultiPoly::term_degree(e, w) == sys.degree(j));
    }
  }
}
