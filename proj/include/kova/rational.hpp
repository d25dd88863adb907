#ifndef KOVA_RATIONAL_HPP
#define KOVA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace kova {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact rational scalar. Always stored reduced with positive denominator;
/// the canonical zero is 0/1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}
  Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& num, const BigInt& den) : v_(make_ratio(num, den)) {}
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  static Rational from_string(const std::string& s);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return denominator() == 1; }
  bool is_negative() const { return v_ < 0; }

  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  Rational operator-() const { return Rational(BigRat(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return v_ < 0 ? Rational(BigRat(-v_)) : *this; }
  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(denominator(), numerator());
  }
  Rational pow(long long e) const;

  double to_double() const { return v_.convert_to<double>(); }

  /// "n" for integers, "n/d" otherwise.
  std::string to_string() const;

  std::size_t hash() const;

 private:
  explicit Rational(BigRat v) : v_(std::move(v)) {}
  static BigRat make_ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    return den < 0 ? BigRat(-num, -den) : BigRat(num, den);
  }
  BigRat v_;
};

using ComplexF = std::complex<double>;

/// Round-to-nearest-integer of a rational, used by continued-fraction steps.
BigInt round_nearest(const BigInt& num, const BigInt& den);

/// Best rational approximation p/q of x with q <= den_bound, by continued
/// fractions. Returns false when the expansion fails to settle (non-finite x).
bool rational_reconstruct(double x, long long den_bound, Rational& out);

/// Exact a-th root of a rational if one exists (sign-aware: negative inputs
/// admit odd roots only).
bool rational_nth_root(const Rational& x, int a, Rational& out);

}  // namespace kova

template <>
struct std::hash<kova::Rational> {
  std::size_t operator()(const kova::Rational& r) const { return r.hash(); }
};

#endif
