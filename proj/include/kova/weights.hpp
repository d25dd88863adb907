#ifndef KOVA_WEIGHTS_HPP
#define KOVA_WEIGHTS_HPP

#include "kova/unipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kova {

/// Candidate regular weight (a_1..a_n, b_1..b_n; h). Construction sorts the
/// pairs so that a_1 <= ... <= a_n and b_n <= ... <= b_1 (pairs are swapped
/// q<->p first so a_i <= b_i); equality is decided on the sorted form.
struct WeightTuple {
  int n = 0;
  std::vector<int> a;  // ascending
  std::vector<int> b;  // descending, b[i] paired with a[i]
  int h = 0;

  WeightTuple() = default;
  WeightTuple(std::vector<int> a_in, std::vector<int> b_in, int h_in);

  /// Flat ascending form (a_1,...,a_n,b_n,...,b_1; h) used for printing.
  std::vector<int> flat() const;
  std::string to_string() const;

  friend bool operator==(const WeightTuple& x, const WeightTuple& y) {
    return x.a == y.a && x.b == y.b && x.h == y.h;
  }
  friend bool operator<(const WeightTuple& x, const WeightTuple& y);
};

struct RegularityCertificate {
  bool w1_ok = false;
  bool w2_ok = false;
  std::optional<UniPoly> chi;        // present iff the division is exact
  std::optional<UniPoly> remainder;  // present iff it is not
  bool regular() const { return w1_ok && w2_ok && chi.has_value(); }
};

/// (W1) min weight in {1,2}; (W2) a_i + b_i = h-1; (W3) the Poincare-type
/// quotient is a polynomial, decided by exact expansion and long division.
RegularityCertificate check_weight(const WeightTuple& w);

/// chi(1) = prod (h-a_i)(h-b_i) / prod a_i b_i as an exact rational.
Rational chi_at_one(const WeightTuple& w);

struct EnumerateOptions {
  bool allow_large_n = false;  // lifts the n <= 3 guard
};

/// Exhaustive scan up to h_max, filtered by check_weight, deterministically
/// sorted. n outside 1..3 throws unless the guard is lifted.
std::vector<WeightTuple> enumerate_regular(int n, int h_max, const EnumerateOptions& opts = {});

struct PrefilterResult {
  bool pass = true;
  std::string reason;  // set when pass is false
};

/// Necessary conditions on the block structure of a W1+W2 tuple; never
/// rejects a tuple that check_weight certifies regular.
PrefilterResult lemma23_prefilter(const WeightTuple& w);

enum class HierarchyFamily { P1, P21, P22, P4 };

struct HierarchyWeights {
  std::vector<std::pair<int, int>> qp;  // (deg q_j, deg p_j), j = 1..n
  std::vector<int> z;                   // deg z_i, i = 1..n
  std::vector<int> H;                   // deg H_i, i = 1..n
};

HierarchyWeights hierarchy_weights(HierarchyFamily family, int n);

/// All exponent vectors over the 2n phase variables with weighted degree d
/// (weights ordered a_1..a_n, b_1..b_n).
std::vector<std::vector<int>> monomial_basis(const WeightTuple& w, int degree);

}  // namespace kova

#endif
