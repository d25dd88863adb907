#ifndef KOVA_UNIPOLY_HPP
#define KOVA_UNIPOLY_HPP

#include "kova/rational.hpp"

#include <utility>
#include <vector>

namespace kova {

/// Dense univariate polynomial over the rationals, lowest-degree coefficient
/// first. The leading coefficient is nonzero unless the polynomial is zero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly monomial(int degree, const Rational& c);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0);
  }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly scaled(const Rational& s) const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return a.c_ != b.c_; }

  Rational eval(const Rational& x) const;
  ComplexF eval(const ComplexF& x) const;
  UniPoly derivative() const;

  std::string to_string(const std::string& var = "T") const;

 private:
  void normalize();
  std::vector<Rational> c_;
};

/// Exact long division: num = quotient * den + remainder with
/// deg(remainder) < deg(den). Throws on a zero divisor.
std::pair<UniPoly, UniPoly> unipoly_divide(const UniPoly& num, const UniPoly& den);

UniPoly unipoly_gcd(const UniPoly& a, const UniPoly& b);

struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;  // (root, multiplicity)
  UniPoly cofactor;                             // no rational roots remain
};

/// All rational roots with multiplicities, found from divisor candidates of
/// the trailing/leading integer coefficients and removed by exact deflation.
RationalRoots rational_roots(const UniPoly& p);

}  // namespace kova

#endif
