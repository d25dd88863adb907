#include "kova/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kova {

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : e_) m = std::max(m, std::abs(v));
  return m;
}

bool solve_complex(CMatrix a, std::vector<ComplexF> b, std::vector<ComplexF>& x) {
  std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_complex: dimensions");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a.at(i, col)) > std::abs(a.at(p, col))) p = i;
    if (std::abs(a.at(p, col)) < 1e-300) return false;
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(col, j));
      std::swap(b[p], b[col]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      ComplexF f = a.at(i, col) / a.at(col, col);
      if (f == ComplexF(0.0)) continue;
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
      b[i] -= f * b[col];
    }
  }
  x.assign(n, ComplexF(0.0));
  for (std::size_t i = n; i-- > 0;) {
    ComplexF acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a.at(i, j) * x[j];
    x[i] = acc / a.at(i, i);
  }
  return true;
}

ComplexF det_complex(CMatrix a) {
  std::size_t n = a.rows();
  ComplexF det(1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a.at(i, col)) > std::abs(a.at(p, col))) p = i;
    if (std::abs(a.at(p, col)) == 0.0) return ComplexF(0.0);
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(col, j));
      det = -det;
    }
    det *= a.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      ComplexF f = a.at(i, col) / a.at(col, col);
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return det;
}

std::vector<ComplexF> durand_kerner(const std::vector<ComplexF>& coeffs, int max_iter,
                                    double tol) {
  // Normalize to a monic polynomial.
  std::size_t deg = coeffs.size();
  while (deg > 0 && std::abs(coeffs[deg - 1]) == 0.0) --deg;
  if (deg <= 1) return {};
  --deg;
  std::vector<ComplexF> c(coeffs.begin(), coeffs.begin() + deg + 1);
  ComplexF lead = c.back();
  for (auto& v : c) v /= lead;

  auto eval = [&](ComplexF x) {
    ComplexF acc(0.0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  };

  // Initial guesses on a slightly irrational spiral to break symmetry.
  double radius = 0.0;
  for (std::size_t i = 0; i < deg; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1.0 + radius;
  std::vector<ComplexF> x(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    constexpr double kTwoPi = 6.283185307179586;
    double th = kTwoPi * (static_cast<double>(i) / deg) + 0.4;
    x[i] = std::polar(0.4 + 0.9 * radius * (0.3 + 0.7 * (i + 1.0) / deg), th);
  }

  for (int it = 0; it < max_iter; ++it) {
    double shift = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      ComplexF num = eval(x[i]);
      ComplexF den(1.0);
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) den *= (x[i] - x[j]);
      if (std::abs(den) < 1e-300) den = ComplexF(1e-300);
      ComplexF delta = num / den;
      x[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < tol) break;
  }

  // Newton polish against the polynomial itself; tightens simple roots to
  // machine accuracy and never worsens a multiple root.
  auto deriv = [&](ComplexF v) {
    ComplexF acc(0.0);
    for (std::size_t i = c.size(); i-- > 1;)
      acc = acc * v + ComplexF(static_cast<double>(i)) * c[i];
    return acc;
  };
  for (auto& root : x) {
    for (int it = 0; it < 6; ++it) {
      ComplexF d = deriv(root);
      if (std::abs(d) < 1e-30) break;
      ComplexF step = eval(root) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > 1.0) break;
      root -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(root))) break;
    }
  }
  return x;
}

std::vector<ComplexF> numeric_eigen(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("numeric_eigen: non-square matrix");
  std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(m.at(i, j).real()) || !std::isfinite(m.at(i, j).imag()))
        throw std::invalid_argument("numeric_eigen: non-finite entry");
  if (n == 0) return {};

  // Characteristic polynomial by the trace recurrence (fine at these sizes).
  std::vector<ComplexF> c(n + 1, ComplexF(0.0));
  c[n] = ComplexF(1.0);
  CMatrix ak = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      CMatrix shifted = ak;
      for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
      CMatrix prod(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
          ComplexF mil = m.at(i, l);
          if (mil == ComplexF(0.0)) continue;
          for (std::size_t j = 0; j < n; ++j) prod.at(i, j) += mil * shifted.at(l, j);
        }
      ak = prod;
    }
    ComplexF tr(0.0);
    for (std::size_t i = 0; i < n; ++i) tr += ak.at(i, i);
    c[n - k] = -tr / ComplexF(static_cast<double>(k));
  }

  std::vector<ComplexF> roots = durand_kerner(c);
  double norm = std::max(1.0, m.max_abs());
  double scale = std::pow(2.0 * norm, static_cast<double>(n));
  for (const ComplexF& lam : roots) {
    CMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= lam;
    if (std::abs(det_complex(shifted)) >= 1e-8 * scale)
      throw std::runtime_error("numeric_eigen: root isolation did not converge");
  }
  std::sort(roots.begin(), roots.end(), [](const ComplexF& a, const ComplexF& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::optional<std::vector<ComplexF>> newton_solve(
    const std::function<std::vector<ComplexF>(const std::vector<ComplexF>&)>& f,
    const std::function<CMatrix(const std::vector<ComplexF>&)>& jac, std::vector<ComplexF> x,
    const NewtonOptions& opts) {
  std::size_t n = x.size();
  for (int it = 0; it < opts.max_iter; ++it) {
    std::vector<ComplexF> fx = f(x);
    double res = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res = std::max(res, std::abs(fx[i]));
      mag = std::max(mag, std::abs(x[i]));
    }
    if (mag > opts.escape) return std::nullopt;
    if (res < opts.tol) return x;
    CMatrix j = jac(x);
    std::vector<ComplexF> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -fx[i];
    std::vector<ComplexF> dx;
    if (!solve_complex(j, rhs, dx)) {
      // Singular Jacobian: damp with a small ridge and retry once per step.
      for (std::size_t i = 0; i < n; ++i) j.at(i, i) += ComplexF(1e-8);
      if (!solve_complex(j, rhs, dx)) return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
  }
  std::vector<ComplexF> fx = f(x);
  double res = 0.0;
  for (const auto& v : fx) res = std::max(res, std::abs(v));
  if (res < opts.tol * 100) return x;
  return std::nullopt;
}

}  // namespace kova
