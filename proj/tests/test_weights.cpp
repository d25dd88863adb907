#include "kova/weights.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace kova;

namespace {

WeightTuple wt(std::vector<int> a, std::vector<int> b, int h) {
  return WeightTuple(std::move(a), std::move(b), h);
}

// Independent oracle for W3: multiply the certified quotient back by the
// denominator product and compare against the numerator product.
bool chi_recombines(const WeightTuple& w, const UniPoly& chi) {
  auto factor = [](int e) {
    std::vector<Rational> c(e + 1, Rational(0));
    c[0] = Rational(-1);
    c[e] = Rational(1);
    return UniPoly(std::move(c));
  };
  UniPoly num = UniPoly::constant(Rational(1)), den = UniPoly::constant(Rational(1));
  for (int i = 0; i < w.n; ++i) {
    num = num * factor(w.h - w.a[i]) * factor(w.h - w.b[i]);
    den = den * factor(w.a[i]) * factor(w.b[i]);
  }
  return chi * den == num;
}

}  // namespace

TEST_CASE("check_weight certifies the three n=1 weights") {
  RegularityCertificate c1 = check_weight(wt({2}, {3}, 6));
  REQUIRE(c1.regular());
  CHECK(c1.chi->to_string("T") == "T^2 + 1");
  CHECK(chi_recombines(wt({2}, {3}, 6), *c1.chi));

  RegularityCertificate c2 = check_weight(wt({1}, {1}, 3));
  REQUIRE(c2.regular());
  CHECK(c2.chi->to_string("T") == "T^2 + 2*T + 1");

  RegularityCertificate bad = check_weight(wt({1}, {3}, 5));
  CHECK(bad.w1_ok);
  CHECK(bad.w2_ok);
  CHECK_FALSE(bad.regular());
  REQUIRE(bad.remainder);
  CHECK(bad.remainder->to_string("T") == "T + 1");
}

TEST_CASE("enumerate_regular reproduces the n=1,2,3 classifications") {
  std::vector<WeightTuple> n1 = enumerate_regular(1, 40);
  REQUIRE(n1.size() == 3);
  CHECK(n1[0] == wt({1}, {1}, 3));
  CHECK(n1[1] == wt({1}, {2}, 4));
  CHECK(n1[2] == wt({2}, {3}, 6));

  std::vector<WeightTuple> n2 = enumerate_regular(2, 40);
  REQUIRE(n2.size() == 6);
  std::vector<std::string> expect2 = {"(1,1,1,1;3)", "(1,1,2,2;4)", "(1,2,2,3;5)",
                                      "(1,2,3,4;6)", "(2,2,3,3;6)", "(2,3,4,5;8)"};
  std::vector<std::string> got2;
  for (const auto& w : n2) got2.push_back(w.to_string());
  std::sort(got2.begin(), got2.end());
  std::sort(expect2.begin(), expect2.end());
  CHECK(got2 == expect2);

  std::vector<WeightTuple> n3 = enumerate_regular(3, 40);
  REQUIRE(n3.size() == 9);
  std::vector<std::string> expect3 = {
      "(1,1,1,1,1,1;3)", "(1,1,1,2,2,2;4)", "(1,1,2,2,3,3;5)",
      "(1,2,2,3,3,4;6)", "(2,2,2,3,3,3;6)", "(1,2,3,3,4,5;7)",
      "(1,2,3,4,5,6;8)", "(2,3,3,4,4,5;8)", "(2,3,4,5,6,7;10)"};
  std::vector<std::string> got3;
  for (const auto& w : n3) got3.push_back(w.to_string());
  std::sort(got3.begin(), got3.end());
  std::sort(expect3.begin(), expect3.end());
  CHECK(got3 == expect3);

  CHECK_THROWS_AS(enumerate_regular(5, 10), std::invalid_argument);
  EnumerateOptions lift;
  lift.allow_large_n = true;
  CHECK_NOTHROW(enumerate_regular(4, 6, lift));
}

TEST_CASE("certified chi has nonnegative integer coefficients and chi(1) counts") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& w : enumerate_regular(n, 40)) {
      RegularityCertificate cert = check_weight(w);
      REQUIRE(cert.regular());
      CHECK(chi_recombines(w, *cert.chi));
      for (const auto& c : cert.chi->coeffs()) {
        CHECK(c.is_integer());
        CHECK(c >= Rational(0));
      }
      Rational at1 = chi_at_one(w);
      CHECK(at1.is_integer());
      CHECK(at1 > Rational(0));
      CHECK(cert.chi->eval(Rational(1)) == at1);
    }
  }
}

TEST_CASE("lemma23 prefilter agrees with the full test") {
  CHECK(lemma23_prefilter(wt({2, 2}, {3, 3}, 6)).pass);
  CHECK(lemma23_prefilter(wt({1, 2}, {4, 3}, 6)).pass);
  PrefilterResult fail = lemma23_prefilter(wt({1, 1}, {3, 3}, 5));
  CHECK_FALSE(fail.pass);

  // Never rejects a weight the full certificate accepts (n <= 3, h <= 25).
  for (int n = 1; n <= 3; ++n) {
    for (int h = 3; h <= 25; ++h) {
      std::vector<int> a(n, 1);
      std::function<void(int, int)> rec = [&](int pos, int low) {
        if (pos == n) {
          std::vector<int> b(n);
          for (int i = 0; i < n; ++i) b[i] = h - 1 - a[i];
          WeightTuple w(a, b, h);
          RegularityCertificate cert = check_weight(w);
          if (cert.regular()) CHECK(lemma23_prefilter(w).pass);
          return;
        }
        for (int v = low; 2 * v <= h - 1; ++v) {
          a[pos] = v;
          rec(pos + 1, v);
        }
      };
      rec(0, 1);
    }
  }
}

TEST_CASE("enumeration is independent of scan order") {
  std::vector<WeightTuple> base = enumerate_regular(2, 30);
  // A scrambled scan: generate all candidates, shuffle, filter, sort.
  std::vector<WeightTuple> cands;
  for (int h = 3; h <= 30; ++h)
    for (int a1 = 1; 2 * a1 <= h - 1; ++a1)
      for (int a2 = a1; 2 * a2 <= h - 1; ++a2)
        cands.push_back(wt({a1, a2}, {h - 1 - a1, h - 1 - a2}, h));
  std::mt19937_64 rng(3);
  std::shuffle(cands.begin(), cands.end(), rng);
  std::vector<WeightTuple> filtered;
  for (const auto& w : cands)
    if (check_weight(w).regular()) filtered.push_back(w);
  std::sort(filtered.begin(), filtered.end());
  filtered.erase(std::unique(filtered.begin(), filtered.end(),
                             [](const WeightTuple& x, const WeightTuple& y) { return x == y; }),
                 filtered.end());
  CHECK(filtered.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(filtered[i] == base[i]);
}

TEST_CASE("hierarchy weights closed forms") {
  HierarchyWeights p1n2 = hierarchy_weights(HierarchyFamily::P1, 2);
  std::vector<int> qp;
  for (auto [q, p] : p1n2.qp) { qp.push_back(q); qp.push_back(p); }
  std::sort(qp.begin(), qp.end());
  CHECK(qp == std::vector<int>{2, 3, 4, 5});
  CHECK(p1n2.z == std::vector<int>{6, 4});
  CHECK(p1n2.H == std::vector<int>{8, 10});

  HierarchyWeights p4n3 = hierarchy_weights(HierarchyFamily::P4, 3);
  qp.clear();
  for (auto [q, p] : p4n3.qp) { qp.push_back(q); qp.push_back(p); }
  std::sort(qp.begin(), qp.end());
  CHECK(qp == std::vector<int>{1, 1, 2, 2, 3, 3});
  CHECK(p4n3.z == std::vector<int>{3, 2, 1});
  CHECK(p4n3.H == std::vector<int>{5, 6, 7});

  HierarchyWeights p22n1 = hierarchy_weights(HierarchyFamily::P22, 1);
  CHECK(p22n1.qp == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(p22n1.z == std::vector<int>{2});
  CHECK(p22n1.H == std::vector<int>{4});
}

TEST_CASE("hierarchy weights satisfy the structural laws up to n=6") {
  for (HierarchyFamily f : {HierarchyFamily::P1, HierarchyFamily::P21, HierarchyFamily::P22,
                            HierarchyFamily::P4}) {
    for (int n = 1; n <= 6; ++n) {
      HierarchyWeights hw = hierarchy_weights(f, n);
      int h1 = hw.H[0];
      int minw = 1 << 30;
      for (auto [q, p] : hw.qp) {
        CHECK(q + p == h1 - 1);
        minw = std::min({minw, q, p});
      }
      CHECK(hw.z[0] == h1 - 2);
      for (int i = 0; i < n; ++i) CHECK(hw.z[i] + hw.H[i] == hw.z[0] + hw.H[0]);
      CHECK((minw == 1 || minw == 2));
    }
  }
}

TEST_CASE("monomial basis under a weight") {
  // (2,3;6), d=6 -> {p^2, q^3}
  auto basis = monomial_basis(wt({2}, {3}, 6), 6);
  REQUIRE(basis.size() == 2);
  CHECK(std::find(basis.begin(), basis.end(), std::vector<int>{3, 0}) != basis.end());
  CHECK(std::find(basis.begin(), basis.end(), std::vector<int>{0, 2}) != basis.end());

  // (1,1;3), d=3 -> q^3, q^2 p, q p^2, p^3
  CHECK(monomial_basis(wt({1}, {1}, 3), 3).size() == 4);

  auto zero = monomial_basis(wt({2}, {3}, 6), 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == std::vector<int>{0, 0});
}
