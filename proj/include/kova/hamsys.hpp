#ifndef KOVA_HAMSYS_HPP
#define KOVA_HAMSYS_HPP

#include "kova/numeric.hpp"
#include "kova/ratmatrix.hpp"
#include "kova/systemdef.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kova {

/// Polynomial vector field dx_i/dz = components[i] together with the integer
/// weights of the state variables. Components may additionally involve
/// independent variables and parameters from the same table.
struct VectorField {
  VarTablePtr vars;
  std::vector<MultiPoly> components;       // one per state variable
  std::vector<std::size_t> state_index;    // position of state variable i in vars
  std::vector<int> weights;                // weight of state variable i
  std::vector<std::size_t> z_index;        // independent variables, if any
  std::vector<int> z_weights;

  std::size_t dim() const { return components.size(); }
  std::string state_name(std::size_t i) const { return vars->name(state_index[i]); }

  /// Field over state variables only (all z and parameters already removed).
  bool autonomous_reduced() const { return vars->size() == dim(); }

  std::vector<ComplexF> eval(const std::vector<ComplexF>& state) const;
  std::vector<Rational> eval(const std::vector<Rational>& state) const;
  /// Jacobian d components / d state at a state point.
  CMatrix jacobian(const std::vector<ComplexF>& state) const;
  RatMatrix jacobian(const std::vector<Rational>& state) const;
};

/// Construct a field whose table consists of exactly the state variables.
VectorField make_field(VarTablePtr vars, std::vector<MultiPoly> components,
                       std::vector<int> weights);

/// Numeric fast path for Newton and integration loops: polynomials and
/// their partial derivatives flattened to double-coefficient term lists
/// once, evaluated without any exact arithmetic.
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const VectorField& field);
  FieldEvaluator(std::size_t n_vars, const std::vector<MultiPoly>& polys);

  std::size_t n_out() const { return comp_.size(); }
  std::size_t n_in() const { return n_in_; }
  std::vector<ComplexF> eval(const std::vector<ComplexF>& state) const;
  CMatrix jacobian(const std::vector<ComplexF>& state) const;

 private:
  struct Compiled {
    std::vector<double> coeff;
    std::vector<int> exps;  // n_in_ exponents per term, flattened
  };
  Compiled compile(const MultiPoly& p) const;
  ComplexF eval_one(const Compiled& c, const std::vector<ComplexF>& state) const;

  std::size_t n_in_ = 0;
  std::vector<Compiled> comp_;
  std::vector<Compiled> deriv_;  // n_out * n_in, row-major
};

/// Parsed, weight-resolved Hamiltonian system. Variable order in the table
/// is q_1..q_m, p_1..p_m, then independent variables, then parameters.
class HamiltonianSystem {
 public:
  explicit HamiltonianSystem(const SystemDef& def);
  static HamiltonianSystem from_catalog(const std::string& id);

  const SystemDef& def() const { return def_; }
  const VarTablePtr& vars() const { return vars_; }
  int m() const { return m_; }
  int k() const { return static_cast<int>(hams_.size()); }
  const std::vector<MultiPoly>& hams() const { return hams_; }
  const MultiPoly& ham(std::size_t i) const { return hams_.at(i); }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(std::size_t i) const { return degrees_.at(i); }

  const std::vector<int>& qweights() const { return qw_; }
  const std::vector<int>& pweights() const { return pw_; }
  const std::vector<int>& zweights() const { return zw_; }
  std::size_t z_count() const { return zw_.size(); }
  std::size_t param_count() const { return paramw_.size(); }

  /// Weight of table variable i: q/p/z weights, parameters as zero unless
  /// param_degrees is set (then their declared degrees).
  std::vector<int> variable_weights(bool param_degrees = false) const;

  /// State-variable weights (a_1..a_m, b_1..b_m).
  std::vector<int> state_weights() const;

  bool positive_weights() const;

 private:
  SystemDef def_;
  VarTablePtr vars_;
  int m_ = 0;
  std::vector<MultiPoly> hams_;
  std::vector<int> degrees_;
  std::vector<int> qw_, pw_, zw_, paramw_;
};

/// dq_i/dz = dH/dp_i, dp_i/dz = -dH/dq_i for the chosen Hamiltonian.
VectorField hamilton_equations(const HamiltonianSystem& sys, std::size_t which = 0);

/// (H^P, H^N) split by weighted degree; parameters count zero unless
/// param_degrees. Throws std::domain_error when a monomial exceeds the
/// declared degree.
std::pair<MultiPoly, MultiPoly> split_principal(const HamiltonianSystem& sys, std::size_t which,
                                                bool param_degrees = false);

MultiPoly poisson_bracket(const MultiPoly& f, const MultiPoly& g, const HamiltonianSystem& sys);

/// Keep the quasihomogeneous component part (degree exactly 1 + weight),
/// then set every independent variable to zero and reduce the table to the
/// state variables.
VectorField principal_autonomous(const VectorField& field);

enum class CheckStatus { Pass, Fail, NotApplicable, NoCounterexample };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string witness;  // set when the check fails (or S, which reports its search)
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  const CheckResult* find(const std::string& name) const;
  bool passed(const std::string& name) const;
};

struct ValidateOptions {
  int s_seeds = 200;
  double s_radius = 3.0;
  double s_tol = 1e-10;
  std::uint64_t rng_seed = 20201013;
  bool param_degrees = false;
};

/// Symbolic checks of (A1)-(A5), (K1)-(K3), (H0)-(H2) plus the stochastic
/// falsifier for (S).
ValidationReport validate(const HamiltonianSystem& sys, const ValidateOptions& opts = {});

/// Structural consequences for a validated system: (i) a_i+b_i = h-1,
/// (ii) r = h-2, (iii) every non-principal monomial has weighted degree 1,
/// (iv) min weight in {1,2} when z-dependent.
ValidationReport prop25_check(const HamiltonianSystem& sys);

/// Residual of the weighted Euler identity
///   sum_j (a_j q_j dH/dq_j + b_j p_j dH/dp_j) - h*H,
/// identically zero when H is quasihomogeneous in the phase variables.
MultiPoly euler_identity_check(const HamiltonianSystem& sys, std::size_t which);

}  // namespace kova

#endif
