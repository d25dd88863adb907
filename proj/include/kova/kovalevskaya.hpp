#ifndef KOVA_KOVALEVSKAYA_HPP
#define KOVA_KOVALEVSKAYA_HPP

#include "kova/hamsys.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kova {

/// Scalar that is either an exact rational or a numeric complex value.
struct Scalar {
  bool exact = false;
  Rational rat;     // valid when exact
  ComplexF approx;  // always kept in sync (rat.to_double() when exact)

  static Scalar from_rational(const Rational& r) { return {true, r, ComplexF(r.to_double())}; }
  static Scalar from_complex(ComplexF c) { return {false, Rational(0), c}; }
  ComplexF value() const { return exact ? ComplexF(rat.to_double()) : approx; }
  std::string to_string() const;
};

enum class BalanceSource { ExactVerified, NewtonFound, UserSupplied };

/// Nonzero root c of -a_i c_i = f_i^A(c).
struct Balance {
  std::vector<Scalar> c;
  double residual = 0.0;  // max |f_i^A(c) + a_i c_i|; identically zero when exact
  BalanceSource source = BalanceSource::NewtonFound;
  bool degenerate_jacobian = false;  // Newton hit a near-singular K; possible family

  bool all_exact() const;
  std::vector<ComplexF> values() const;
  std::vector<Rational> exact_values() const;  // throws if not all exact
};

/// Set z = 0 and drop non-(K1) terms, leaving the homogeneous core over the
/// state variables.
VectorField truncate_autonomous(const VectorField& field);

struct BalanceOptions {
  int seeds = 2000;
  double radius = 4.0;
  std::uint64_t rng_seed = 20201013;
  double dedup_tol = 1e-6;
  long long den_bound = 1000000;
  double newton_tol = 1e-12;
};

/// Hybrid balance search: Newton from a random complex seed battery,
/// deduplication, then rational reconstruction with exact verification.
/// The origin is excluded. Deterministic for a fixed rng_seed.
std::vector<Balance> find_balances(const VectorField& field, const BalanceOptions& opts = {});

/// Balance from user coordinates, verified exactly.
Balance balance_from_exact(const VectorField& field, const std::vector<Rational>& c);

/// K(c) = Df^A(c) + diag(a); exact flavour requires an all-exact balance.
RatMatrix kov_matrix_exact(const VectorField& field, const Balance& c);
CMatrix kov_matrix_numeric(const VectorField& field, const Balance& c);

struct KovalevskayaReport {
  Balance balance;
  bool exact = false;              // exponents carried exactly
  std::optional<RatMatrix> k_exact;
  std::vector<Scalar> exponents;   // sorted by (Re, Im)
  int semisimple = -1;             // 1 yes, 0 no, -1 unknown (numeric ties)
  bool principal = false;          // classical Painleve-test signature
  bool minus_one_eigvec_ok = false;  // K (a o c) = -(a o c)
  std::vector<Scalar> eigvec_minus1;
};

KovalevskayaReport exponents(const VectorField& field, const Balance& c);

/// Lemma-style pairing: the exponent multiset is invariant under
/// kappa -> h-1-kappa and contains h.
bool pairing_check(const KovalevskayaReport& report, int h, double tol = 1e-6);

struct Theorem45Entry {
  std::size_t j = 0;             // Hamiltonian index
  bool grad_zero = false;        // dH_j(c) = 0
  bool identity_ok = false;      // dH_j(c) (K - h_j I) = 0
  bool ham_zero = false;         // H_j(c) = 0
  double residual = 0.0;         // max abs entry of the identity residual (numeric path)
};

struct Theorem45Report {
  bool exact = false;
  std::vector<Theorem45Entry> entries;
  bool all_ok() const;
};

/// Gradient/left-eigenvector identities at a balance of the H_1 flow.
Theorem45Report theorem45_check(const HamiltonianSystem& sys, const Balance& c);

/// Sorted integer signature like "(-3,-1,8,10)" when every exponent is an
/// integer within tol; otherwise a numeric rendering.
std::string signature_string(const KovalevskayaReport& report, double tol = 1e-6);

}  // namespace kova

#endif
