#include "kova/ratmatrix.hpp"

#include <stdexcept>

namespace kova {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("RatMatrix: dimension mismatch");
  RatMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("RatMatrix: dimension mismatch");
  RatMatrix r(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
  return r;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("RatMatrix: dimension mismatch");
  RatMatrix r(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
  return r;
}

RatMatrix RatMatrix::scaled(const Rational& s) const {
  RatMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
  return r;
}

std::vector<Rational> RatMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("RatMatrix::apply arity");
  std::vector<Rational> r(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

std::vector<Rational> RatMatrix::apply_left(const std::vector<Rational>& v) const {
  if (v.size() != rows_) throw std::invalid_argument("RatMatrix::apply_left arity");
  std::vector<Rational> r(cols_, Rational(0));
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) r[j] += v[i] * at(i, j);
  return r;
}

Rational RatMatrix::trace() const {
  Rational t(0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelonize(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    Rational inv = m.at(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Rational f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t RatMatrix::rank() const {
  RatMatrix m = *this;
  return echelonize(m).size();
}

std::vector<std::vector<Rational>> RatMatrix::kernel_basis() const {
  RatMatrix m = *this;
  std::vector<std::size_t> pivots = echelonize(m);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[f] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

UniPoly char_poly(const RatMatrix& m) {
  if (!m.square()) throw std::invalid_argument("char_poly: non-square matrix");
  std::size_t n = m.rows();
  // Faddeev-LeVerrier: M_1 = M, c_{n-k} = -tr(M A_{k-1} + c ...)/k.
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = Rational(1);
  RatMatrix ak = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      RatMatrix shifted = ak;
      for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
      ak = m * shifted;
    }
    c[n - k] = -(ak.trace() / Rational((long long)k));
  }
  return UniPoly(std::move(c));
}

namespace {

LinearSolveResult solve_linear_impl(const RatMatrix& a, std::vector<MultiPoly> rhs) {
  if (rhs.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  RatMatrix m = a;
  // Reduced row echelon on A with the same row operations applied to rhs.
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
      std::swap(rhs[p], rhs[row]);
    }
    Rational inv = m.at(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    rhs[row] = rhs[row].scaled(inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Rational f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
      rhs[i] -= rhs[row].scaled(f);
    }
    pivots.push_back(col);
    ++row;
  }

  LinearSolveResult res;
  for (std::size_t i = row; i < m.rows(); ++i)
    if (!rhs[i].is_zero()) res.residuals.push_back(rhs[i]);
  if (!res.residuals.empty()) {
    res.kind = LinearSolveResult::Kind::Inconsistent;
    return res;
  }

  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  VarTablePtr ring = rhs.empty() ? nullptr : rhs.front().vars();
  res.solution.assign(m.cols(), MultiPoly::zero(ring));
  for (std::size_t r = 0; r < pivots.size(); ++r) res.solution[pivots[r]] = rhs[r];

  if (pivots.size() == m.cols()) {
    res.kind = LinearSolveResult::Kind::Unique;
    return res;
  }
  res.kind = LinearSolveResult::Kind::Parametric;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    res.free_columns.push_back(f);
    std::vector<Rational> v(m.cols(), Rational(0));
    v[f] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
    res.kernel.push_back(std::move(v));
  }
  return res;
}

}  // namespace

LinearSolveResult solve_linear(const RatMatrix& a, const std::vector<MultiPoly>& b) {
  return solve_linear_impl(a, b);
}

LinearSolveResult solve_linear(const RatMatrix& a, const std::vector<Rational>& b) {
  static const VarTablePtr empty_ring = make_vartable({});
  std::vector<MultiPoly> rhs;
  rhs.reserve(b.size());
  for (const auto& x : b) rhs.push_back(MultiPoly::constant(empty_ring, x));
  return solve_linear_impl(a, rhs);
}

}  // namespace kova
