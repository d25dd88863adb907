#include "kova/multipoly.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <type_traits>

namespace kova {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto [it, inserted] = index_.emplace(names_[i], i);
    if (!inserted) throw std::invalid_argument("VarTable: duplicate variable " + names_[i]);
  }
}

std::optional<std::size_t> VarTable::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarTablePtr make_vartable(std::vector<std::string> names) {
  return std::make_shared<VarTable>(std::move(names));
}

bool GrevlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  long long da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da > db;
  // Equal degree: a > b iff the last nonzero entry of a-b is negative.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

MultiPoly MultiPoly::constant(VarTablePtr vars, const Rational& c) {
  MultiPoly p(std::move(vars));
  if (!c.is_zero()) p.terms_.emplace(Exponents(p.vars_->size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(VarTablePtr vars, std::size_t index) {
  MultiPoly p(std::move(vars));
  Exponents e(p.vars_->size(), 0);
  e.at(index) = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial(VarTablePtr vars, Exponents exps, const Rational& c) {
  MultiPoly p(std::move(vars));
  if (exps.size() != p.vars_->size()) throw std::invalid_argument("MultiPoly: exponent arity");
  p.add_term(exps, c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational MultiPoly::constant_value() const {
  Exponents zero(vars_ ? vars_->size() : 0, 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& exps, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (vars_ == o.vars_) return;
  if (vars_ && o.vars_ && vars_->same_names(*o.vars_)) return;
  throw std::invalid_argument("MultiPoly: variable-table mismatch");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.vars_);
  Exponents sum;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      sum = ea;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += eb[i];
      r.add_term(sum, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef * c);
  return r;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("MultiPoly: negative power");
  MultiPoly acc = constant(vars_, Rational(1));
  MultiPoly base = *this;
  while (e) {
    if (e & 1) acc *= base;
    if (e >>= 1) base *= base;
  }
  return acc;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_ && !(a.vars_ && b.vars_ && a.vars_->same_names(*b.vars_)))
    return false;
  return a.terms_ == b.terms_;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(e[var]));
  }
  return r;
}

MultiPoly MultiPoly::substituted(std::size_t var, const Rational& value) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    int k = d[var];
    d[var] = 0;
    r.add_term(d, c * value.pow(k));
  }
  return r;
}

MultiPoly MultiPoly::mapped_to(const VarTablePtr& target) const {
  MultiPoly r(target);
  std::vector<std::optional<std::size_t>> where(vars_->size());
  for (std::size_t i = 0; i < vars_->size(); ++i) where[i] = target->index_of(vars_->name(i));
  for (const auto& [e, c] : terms_) {
    Exponents d(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!where[i])
        throw std::invalid_argument("MultiPoly: variable " + vars_->name(i) +
                                    " missing from target table");
      d[*where[i]] += e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

namespace {

template <typename Scalar>
Scalar eval_impl(const MultiPoly::TermMap& terms, std::span<const Scalar> point, Scalar zero,
                 Scalar one) {
  Scalar acc = zero;
  for (const auto& [e, c] : terms) {
    Scalar t = one;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t = t * point[i];
    }
    if constexpr (std::is_same_v<Scalar, Rational>) {
      acc += t * c;
    } else {
      acc += t * Scalar(c.to_double());
    }
  }
  return acc;
}

}  // namespace

Rational MultiPoly::eval(std::span<const Rational> point) const {
  if (point.size() != vars_->size()) throw std::invalid_argument("MultiPoly::eval arity");
  return eval_impl<Rational>(terms_, point, Rational(0), Rational(1));
}

ComplexF MultiPoly::eval(std::span<const ComplexF> point) const {
  if (point.size() != vars_->size()) throw std::invalid_argument("MultiPoly::eval arity");
  return eval_impl<ComplexF>(terms_, point, ComplexF(0.0), ComplexF(1.0));
}

long long MultiPoly::term_degree(const Exponents& exps, std::span<const int> weights) {
  long long d = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) d += static_cast<long long>(exps[i]) * weights[i];
  return d;
}

std::optional<long long> MultiPoly::weighted_degree(std::span<const int> weights) const {
  if (terms_.empty()) return std::nullopt;
  long long best = std::numeric_limits<long long>::min();
  for (const auto& [e, c] : terms_) best = std::max(best, term_degree(e, weights));
  return best;
}

MultiPoly MultiPoly::filter_terms(
    const std::function<bool(const Exponents&, const Rational&)>& keep) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (keep(e, c)) r.terms_.emplace(e, c);
  return r;
}

long long MultiPoly::total_degree() const {
  long long best = 0;
  for (const auto& [e, c] : terms_) {
    long long d = 0;
    for (int x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

std::size_t MultiPoly::hash() const {
  std::size_t seed = 0;
  for (const auto& [e, c] : terms_) {
    boost::hash_combine(seed, boost::hash_range(e.begin(), e.end()));
    boost::hash_combine(seed, c.hash());
  }
  return seed;
}

}  // namespace kova
