#ifndef KOVA_LAURENT_HPP
#define KOVA_LAURENT_HPP

#include "kova/kovalevskaya.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kova {

/// Truncated formal series solution x_i = sum_j b_{i,j} T^(-a_i+j) built by
/// the resonance recursion. Coefficients are polynomials in the parameter
/// ring (z0, declared parameters, adjoined free parameters s_r).
struct LaurentSeries {
  Balance balance;
  std::vector<std::string> component_names;
  std::vector<int> pole_exponents;  // a_i
  int order = 0;                    // N

  VarTablePtr param_ring;
  std::map<std::string, Rational> fixed_values;  // substitutions applied at build time
  std::vector<std::vector<MultiPoly>> coeff;  // coeff[i][j], j = 0..N (empty past an obstruction)

  struct Resonance {
    int j = 0;
    std::vector<std::vector<Rational>> kernel;  // basis vectors over components
    std::vector<std::string> params;            // adjoined names, one per kernel vector
  };
  std::vector<Resonance> resonances;

  struct Obstruction {
    int j = 0;
    std::vector<MultiPoly> residuals;  // nonzero row certificates
  };
  std::optional<Obstruction> obstructed_at;

  bool order_below_max_exponent = false;  // warning: test incomplete

  int free_param_count() const;  // z0 excluded
};

struct SeriesOptions {
  /// Values substituted for z0 / parameters; anything absent stays symbolic.
  std::map<std::string, Rational> fixed;
};

/// Run the recursion (K - jI) b_j = r_j for j = 1..order. The balance must
/// be exact. The full field is allowed: the independent variable expands as
/// z0 + T; extra independent variables ride along as constants.
LaurentSeries build_series(const VectorField& field, const Balance& c, int order,
                           const SeriesOptions& opts = {});
LaurentSeries build_series(const HamiltonianSystem& sys, const Balance& c, int order,
                           const SeriesOptions& opts = {});

/// Substitute the truncated series into dx_i/dT - f_i and return the lowest
/// T-exponent of the residual per component, within the window the series
/// determines; component i must reach at least -a_i + N. Throws on an
/// obstructed series.
std::vector<int> residual_order(const VectorField& field, const LaurentSeries& series);

struct PainleveVerdict {
  enum class Kind { Pass, Fail, Obstructed };
  Kind kind = Kind::Fail;
  std::optional<std::size_t> witness;  // index into reports of the passing balance
  std::vector<KovalevskayaReport> reports;
  std::string detail;
};

/// Classical test: some principal balance whose series carries the full
/// parameter count with no logarithmic obstruction. series_order = 0 means
/// "up to the largest integer exponent".
PainleveVerdict painleve_test(const HamiltonianSystem& sys, const BalanceOptions& opts = {},
                              int series_order = 0);
PainleveVerdict painleve_test(const VectorField& field, const BalanceOptions& opts = {},
                              int series_order = 0);

/// JSON-ready rendering of a series: one entry per stored coefficient with
/// component, exponent and expression text.
struct SeriesTermView {
  std::string component;
  int exponent = 0;
  std::string coefficient;
};
std::vector<SeriesTermView> series_terms(const LaurentSeries& series, bool skip_zero = true);

}  // namespace kova

#endif
