#ifndef KOVA_BLOWUP_HPP
#define KOVA_BLOWUP_HPP

#include "kova/kovalevskaya.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kova {

/// Chart of the weighted blow-up at the origin: the chart variable becomes
/// r^(a_j); every other state variable x_i becomes r^(a_i) X_i. The induced
/// field is written in the rescaled time d/dz = r d/dt.
struct BlowupChart {
  std::size_t chart = 0;            // state-variable index the chart is centered on
  std::string chart_var;            // original name
  int action_order = 1;             // a_j (Z_{a_j} quotient metadata)
  VarTablePtr vars;                 // (r, X_i for i != chart)
  VectorField field;                // dr/dt and dX_i/dt over `vars`
  std::vector<int> source_weights;  // weights of the original state variables
  std::vector<std::string> source_names;

  std::size_t r_index() const { return 0; }
  /// Chart coordinate index of source variable i (chart variable itself maps
  /// nowhere; returns nullopt).
  std::optional<std::size_t> coord_of(std::size_t source_i) const;
};

/// Build the chart for an autonomous quasihomogeneous field with positive
/// weights. Throws on nonpositive weights or a bad index.
BlowupChart make_chart(const VectorField& field, std::size_t chart_index);
BlowupChart make_chart(const HamiltonianSystem& sys, const std::string& chart_var);

/// H_j(q,p) = r^{h_j} * pullback on the chart; returns the bracketed factor.
MultiPoly chart_pullback(const BlowupChart& chart, const HamiltonianSystem& sys,
                         std::size_t which);

/// Defining equations of V_0 on the chart: every Hamiltonian with the chart
/// variable set to one.
std::vector<MultiPoly> v0_equations(const BlowupChart& chart, const HamiltonianSystem& sys);

struct DivisorFixedPoint {
  std::size_t chart = 0;
  std::vector<Scalar> coords;        // divisor coordinates (r = 0 omitted)
  std::optional<Balance> origin;     // balance it came from, when mapped
  std::vector<Scalar> spectrum;      // chart Jacobian eigenvalues (incl. the r-direction)
  Scalar lambda1;                    // r-direction eigenvalue
  int dim_stable = 0, dim_unstable = 0, dim_center = 0;
  bool dims_tolerance_sensitive = false;
  bool lowest_balance = false;
  bool on_v0 = false;
  bool v0_singular = false;
};

struct FixedPointOptions {
  int seeds = 400;
  double radius = 4.0;
  std::uint64_t rng_seed = 20201013;
  double tol = 1e-6;
};

/// Map balances with nonzero chart coordinate onto the divisor via
/// X_i = c_j^(-a_i/a_j) c_i (exact when the root is rational), cross-checked
/// against a direct Newton solve of the divisor fixed-point equations.
/// Balances invisible in this chart are skipped.
std::vector<DivisorFixedPoint> divisor_fixed_points(const BlowupChart& chart,
                                                    const std::vector<Balance>& balances,
                                                    const FixedPointOptions& opts = {});

struct Prop42Report {
  bool ok = false;
  double worst_ratio_error = 0.0;  // max |lambda_i/lambda_1 + kappa_i| over the matching
  std::vector<Scalar> spectrum;
  Scalar lambda1;
};

/// Spectrum of the chart Jacobian at a divisor fixed point against the
/// Kovalevskaya exponents: lambda_i / lambda_1 = -kappa_i as multisets.
Prop42Report prop42_check(const BlowupChart& chart, const DivisorFixedPoint& fp,
                          const KovalevskayaReport& kov);

/// Residual of d/dt[H_j(1,X)] + (h_j/a_chart) f_chart(1,X) H_j(1,X), which
/// vanishes identically for commuting quasihomogeneous Hamiltonians.
MultiPoly v0_invariance_identity(const BlowupChart& chart, const HamiltonianSystem& sys,
                                 std::size_t which);

/// Stable/unstable/center dimensions from the spectrum normalized by
/// -lambda_1 (so the r-direction always counts stable), plus the
/// lowest-balance and V_0-singularity flags.
DivisorFixedPoint manifold_dims(const BlowupChart& chart, const HamiltonianSystem& sys,
                                DivisorFixedPoint fp, const KovalevskayaReport& kov);

struct TrajectoryPoint {
  double t = 0.0;
  std::vector<ComplexF> state;
  double h_drift = 0.0;  // max_j | |H_j| - |H_j at start| | ... see integrate_chart
};

struct Trajectory {
  std::vector<TrajectoryPoint> samples;
  double max_drift = 0.0;
  bool escaped = false;
};

/// Fixed-step RK4 on the chart field; drift tracks max_j |H_j(1,X(t))|
/// relative to the start. Direction multiplies dt (complex allowed).
Trajectory integrate_chart(const BlowupChart& chart, const HamiltonianSystem& sys,
                           std::vector<ComplexF> start, double t_end, double step,
                           ComplexF direction = ComplexF(1.0), double escape_radius = 1e6);

}  // namespace kova

#endif
