#ifndef KOVA_MULTIPOLY_HPP
#define KOVA_MULTIPOLY_HPP

#include "kova/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kova {

/// Ordered, immutable set of variable names shared by the polynomials built
/// over it. Two polynomials are compatible only if they point at the same
/// table (or tables with identical name lists).
class VarTable {
 public:
  explicit VarTable(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool same_names(const VarTable& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

VarTablePtr make_vartable(std::vector<std::string> names);

using Exponents = std::vector<int>;

/// Graded reverse-lexicographic comparison, "greater" variant so that map
/// iteration yields the canonical printing order (highest degree first).
struct GrevlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Multivariate polynomial with exact rational coefficients over a shared
/// variable table. Zero coefficients are never stored; the term map is kept
/// in canonical (descending grevlex) order, which fixes printing and hashing.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrevlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(VarTablePtr vars) : vars_(std::move(vars)) {}

  static MultiPoly zero(VarTablePtr vars) { return MultiPoly(std::move(vars)); }
  static MultiPoly constant(VarTablePtr vars, const Rational& c);
  static MultiPoly variable(VarTablePtr vars, std::size_t index);
  static MultiPoly monomial(VarTablePtr vars, Exponents exps, const Rational& c);

  const VarTablePtr& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of the zero exponent vector

  void add_term(const Exponents& exps, const Rational& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly scaled(const Rational& c) const;
  MultiPoly pow(int e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly derivative(std::size_t var) const;

  /// Substitute a rational value for one variable (the variable stays in the
  /// table; its exponent becomes zero in every term).
  MultiPoly substituted(std::size_t var, const Rational& value) const;

  /// Rebuild this polynomial over another table; every variable of the
  /// source that occurs must exist (by name) in the target.
  MultiPoly mapped_to(const VarTablePtr& target) const;

  Rational eval(std::span<const Rational> point) const;
  ComplexF eval(std::span<const ComplexF> point) const;

  /// Weighted degree of a single term under integer weights (one per variable).
  static long long term_degree(const Exponents& exps, std::span<const int> weights);
  /// Max weighted degree over terms; nullopt when zero.
  std::optional<long long> weighted_degree(std::span<const int> weights) const;
  /// Terms whose weighted degree satisfies the predicate.
  MultiPoly filter_terms(const std::function<bool(const Exponents&, const Rational&)>& keep) const;

  long long total_degree() const;

  std::size_t hash() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  VarTablePtr vars_;
  TermMap terms_;
};

}  // namespace kova

#endif
