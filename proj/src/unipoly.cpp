#include "kova/unipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kova {

void UniPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::monomial(int degree, const Rational& c) {
  if (c.is_zero()) return UniPoly();
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(-x);
  return UniPoly(std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return UniPoly(std::move(v));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::scaled(const Rational& s) const {
  if (s.is_zero()) return UniPoly();
  std::vector<Rational> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(x * s);
  return UniPoly(std::move(v));
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

ComplexF UniPoly::eval(const ComplexF& x) const {
  ComplexF acc(0.0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + ComplexF(c_[i].to_double());
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational((long long)i);
  return UniPoly(std::move(v));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    Rational a = c.abs();
    if (first) {
      if (c.is_negative()) os << "-";
      first = false;
    } else {
      os << (c.is_negative() ? " - " : " + ");
    }
    bool unit = a.is_one() && i > 0;
    if (!unit) os << a.to_string();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> unipoly_divide(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw std::domain_error("unipoly_divide: zero divisor");
  std::vector<Rational> rem = num.coeffs();
  int dn = den.degree();
  Rational lead = den.leading();
  if (num.degree() < dn) return {UniPoly(), num};
  std::vector<Rational> quot(num.degree() - dn + 1, Rational(0));
  for (int i = num.degree(); i >= dn; --i) {
    Rational c = rem[i];
    if (c.is_zero()) continue;
    Rational q = c / lead;
    quot[i - dn] = q;
    for (int j = 0; j <= dn; ++j) rem[i - dn + j] -= q * den.coeff(j);
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly unipoly_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    auto [q, r] = unipoly_divide(x, y);
    x = y;
    y = r;
  }
  if (!x.is_zero()) x = x.scaled(x.leading().inverse());
  return x;
}

namespace {

std::vector<BigInt> positive_divisors(BigInt n) {
  n = boost::multiprecision::abs(n);
  std::vector<std::pair<BigInt, int>> factors;
  for (BigInt p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      factors.emplace_back(p, e);
    }
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<BigInt> divs{1};
  for (const auto& [p, e] : factors) {
    std::size_t base = divs.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

RationalRoots rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
  RationalRoots out;
  UniPoly cur = p;

  // Strip roots at zero.
  int zero_mult = 0;
  while (!cur.is_zero() && cur.coeff(0).is_zero()) {
    std::vector<Rational> v(cur.coeffs().begin() + 1, cur.coeffs().end());
    cur = UniPoly(std::move(v));
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.emplace_back(Rational(0), zero_mult);

  if (cur.degree() <= 0) {
    out.cofactor = UniPoly::constant(Rational(1));
    return out;
  }

  // Clear denominators: candidates p/q need p | trailing, q | leading of the
  // integer form.
  BigInt denlcm = 1;
  for (const auto& c : cur.coeffs())
    denlcm = boost::multiprecision::lcm(denlcm, c.denominator());
  BigInt trailing = (cur.coeff(0) * Rational(denlcm)).numerator();
  BigInt leading = (cur.leading() * Rational(denlcm)).numerator();

  std::vector<Rational> candidates;
  for (const BigInt& num : positive_divisors(trailing)) {
    for (const BigInt& den : positive_divisors(leading)) {
      if (boost::multiprecision::gcd(num, den) != 1) continue;
      candidates.emplace_back(num, den);
      candidates.emplace_back(-num, den);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const Rational& cand : candidates) {
    if (cur.degree() <= 0) break;
    int mult = 0;
    while (cur.degree() > 0 && cur.eval(cand).is_zero()) {
      UniPoly lin({-cand, Rational(1)});
      auto [q, r] = unipoly_divide(cur, lin);
      cur = q;
      ++mult;
    }
    if (mult > 0) out.roots.emplace_back(cand, mult);
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.cofactor = cur;
  return out;
}

}  // namespace kova
