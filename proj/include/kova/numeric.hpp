#ifndef KOVA_NUMERIC_HPP
#define KOVA_NUMERIC_HPP

#include "kova/rational.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace kova {

/// Dense complex double-precision matrix, row-major.
class CMatrix {
 public:
  CMatrix() : rows_(0), cols_(0) {}
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ComplexF& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const ComplexF& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  double max_abs() const;

 private:
  std::size_t rows_, cols_;
  std::vector<ComplexF> e_;
};

/// LU solve with partial pivoting; returns false when the matrix is
/// numerically singular.
bool solve_complex(CMatrix a, std::vector<ComplexF> b, std::vector<ComplexF>& x);

ComplexF det_complex(CMatrix a);

/// Roots of a complex-coefficient polynomial (lowest degree first) by
/// simultaneous Durand-Kerner iteration.
std::vector<ComplexF> durand_kerner(const std::vector<ComplexF>& coeffs, int max_iter = 600,
                                    double tol = 1e-14);

/// Eigenvalues via root isolation on the characteristic polynomial. Each
/// returned value satisfies |det(M - lambda I)| < 1e-8 * scale; throws
/// std::runtime_error on non-convergence.
std::vector<ComplexF> numeric_eigen(const CMatrix& m);

struct NewtonOptions {
  int max_iter = 80;
  double tol = 1e-13;
  double escape = 1e8;
};

/// Damped Newton iteration for F(x) = 0 with an explicit Jacobian callback.
/// Returns the converged point or nullopt.
std::optional<std::vector<ComplexF>> newton_solve(
    const std::function<std::vector<ComplexF>(const std::vector<ComplexF>&)>& f,
    const std::function<CMatrix(const std::vector<ComplexF>&)>& jac, std::vector<ComplexF> x,
    const NewtonOptions& opts = {});

}  // namespace kova

#endif
