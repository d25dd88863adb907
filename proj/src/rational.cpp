#include "kova/rational.hpp"

#include <boost/functional/hash.hpp>

#include <cmath>

namespace kova {

Rational Rational::from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt num(s.substr(0, slash));
  BigInt den(s.substr(slash + 1));
  return Rational(num, den);
}

Rational Rational::pow(long long e) const {
  if (e == 0) return Rational(1);
  Rational base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? -(unsigned long long)e : (unsigned long long)e;
  Rational acc(1);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

std::size_t Rational::hash() const {
  std::size_t seed = boost::multiprecision::hash_value(numerator());
  boost::hash_combine(seed, boost::multiprecision::hash_value(denominator()));
  return seed;
}

BigInt round_nearest(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  BigInt r = num - q * den;
  if (2 * boost::multiprecision::abs(r) >= boost::multiprecision::abs(den))
    q += (r < 0) == (den < 0) ? 1 : -1;
  return q;
}

bool rational_reconstruct(double x, long long den_bound, Rational& out) {
  if (!std::isfinite(x)) return false;
  // Continued-fraction convergents p_k/q_k until q exceeds the bound.
  // Acceptance is strict (3e-13 relative): Newton-refined values carry
  // near-machine accuracy, and anything looser starts accepting good
  // convergents of irrationals. False negatives are caught downstream by
  // the exact verification step.
  constexpr double kTol = 3e-13;
  double v = x;
  BigInt p0 = 1, q0 = 0;
  BigInt p1(static_cast<long long>(std::floor(v))), q1 = 1;
  double frac = v - std::floor(v);
  for (int it = 0; it < 64; ++it) {
    double approx = Rational(p1, q1).to_double();
    if (std::abs(approx - x) <= kTol * std::max(1.0, std::abs(x))) break;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
    if (!std::isfinite(v)) break;
    BigInt a(static_cast<long long>(std::floor(v)));
    frac = v - std::floor(v);
    BigInt p2 = a * p1 + p0;
    BigInt q2 = a * q1 + q0;
    if (q2 > den_bound) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
  }
  if (q1 == 0 || q1 > den_bound) return false;
  out = Rational(p1, q1);
  return std::abs(out.to_double() - x) <= kTol * std::max(1.0, std::abs(x));
}

bool rational_nth_root(const Rational& x, int a, Rational& out) {
  if (a <= 0) return false;
  if (a == 1) { out = x; return true; }
  if (x.is_zero()) { out = Rational(0); return true; }
  if (x.is_negative() && a % 2 == 0) return false;

  auto int_root = [](const BigInt& n, int k, BigInt& root) {
    if (n == 0) { root = 0; return true; }
    // Newton iteration on integers, then verify exactly.
    double guess = std::pow(n.convert_to<double>(), 1.0 / k);
    BigInt r(static_cast<long long>(std::llround(guess)));
    if (r < 1) r = 1;
    for (int it = 0; it < 200; ++it) {
      BigInt rk = boost::multiprecision::pow(r, k - 1);
      if (rk == 0) break;
      BigInt next = ((k - 1) * r * rk + n) / (k * rk);
      if (next == r) break;
      r = next;
    }
    for (BigInt cand = r - 2; cand <= r + 2; ++cand) {
      if (cand >= 0 && boost::multiprecision::pow(cand, k) == n) { root = cand; return true; }
    }
    return false;
  };

  BigInt num = boost::multiprecision::abs(x.numerator());
  BigInt den = x.denominator();
  BigInt rn, rd;
  if (!int_root(num, a, rn) || !int_root(den, a, rd)) return false;
  Rational r(rn, rd);
  if (x.is_negative()) r = -r;
  out = r;
  return true;
}

}  // namespace kova
