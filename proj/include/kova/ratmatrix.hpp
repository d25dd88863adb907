#ifndef KOVA_RATMATRIX_HPP
#define KOVA_RATMATRIX_HPP

#include "kova/multipoly.hpp"
#include "kova/unipoly.hpp"

#include <vector>

namespace kova {

/// Dense matrix of exact rationals, row-major.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  RatMatrix scaled(const Rational& s) const;
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  /// Row-vector product v^T M.
  std::vector<Rational> apply_left(const std::vector<Rational>& v) const;

  Rational trace() const;
  std::size_t rank() const;
  /// Basis of the right null space (each vector has cols() entries).
  std::vector<std::vector<Rational>> kernel_basis() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> e_;
};

/// Exact monic characteristic polynomial det(lambda*I - M) by the
/// Faddeev-LeVerrier trace recurrence. Throws on non-square input.
UniPoly char_poly(const RatMatrix& m);

/// Outcome of Gaussian elimination on A x = b where b entries are
/// polynomials in parameter variables. Consistency requires each eliminated
/// zero row's right-hand side to vanish identically.
struct LinearSolveResult {
  enum class Kind { Unique, Parametric, Inconsistent };
  Kind kind = Kind::Unique;
  std::vector<MultiPoly> solution;                 // particular (free vars = 0)
  std::vector<std::vector<Rational>> kernel;       // basis, Parametric only
  std::vector<MultiPoly> residuals;                // nonzero certificates, Inconsistent only
  std::vector<std::size_t> free_columns;
};

LinearSolveResult solve_linear(const RatMatrix& a, const std::vector<MultiPoly>& b);

/// Convenience overload for constant right-hand sides.
LinearSolveResult solve_linear(const RatMatrix& a, const std::vector<Rational>& b);

}  // namespace kova

#endif
