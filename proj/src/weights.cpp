#include "kova/weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kova {

WeightTuple::WeightTuple(std::vector<int> a_in, std::vector<int> b_in, int h_in)
    : n(static_cast<int>(a_in.size())), a(std::move(a_in)), b(std::move(b_in)), h(h_in) {
  if (a.size() != b.size()) throw std::invalid_argument("WeightTuple: a/b length mismatch");
  std::vector<std::pair<int, int>> pairs(n);
  for (int i = 0; i < n; ++i) pairs[i] = std::minmax(a[i], b[i]);
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& x, const auto& y) { return x.first != y.first ? x.first < y.first
                                                                         : x.second > y.second; });
  for (int i = 0; i < n; ++i) {
    a[i] = pairs[i].first;
    b[i] = pairs[i].second;
  }
}

std::vector<int> WeightTuple::flat() const {
  std::vector<int> v = a;
  for (int i = n - 1; i >= 0; --i) v.push_back(b[i]);
  return v;
}

std::string WeightTuple::to_string() const {
  std::ostringstream os;
  os << "(";
  auto f = flat();
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
  os << ";" << h << ")";
  return os.str();
}

bool operator<(const WeightTuple& x, const WeightTuple& y) {
  if (x.h != y.h) return x.h < y.h;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

namespace {

UniPoly cyclotomic_like(int e) {
  // T^e - 1
  std::vector<Rational> c(e + 1, Rational(0));
  c[0] = Rational(-1);
  c[e] = Rational(1);
  return UniPoly(std::move(c));
}

}  // namespace

RegularityCertificate check_weight(const WeightTuple& w) {
  RegularityCertificate cert;
  if (w.n <= 0) return cert;
  int minw = w.a[0];
  for (int i = 0; i < w.n; ++i) minw = std::min({minw, w.a[i], w.b[i]});
  cert.w1_ok = (minw == 1 || minw == 2);
  cert.w2_ok = true;
  for (int i = 0; i < w.n; ++i)
    if (w.a[i] + w.b[i] != w.h - 1) cert.w2_ok = false;

  for (int i = 0; i < w.n; ++i) {
    if (w.a[i] < 1 || w.a[i] >= w.h || w.b[i] < 1 || w.b[i] >= w.h) {
      // Outside the admissible range the quotient is not even well formed.
      cert.remainder = UniPoly::constant(Rational(1));
      return cert;
    }
  }

  UniPoly num = UniPoly::constant(Rational(1));
  UniPoly den = UniPoly::constant(Rational(1));
  for (int i = 0; i < w.n; ++i) {
    num = num * cyclotomic_like(w.h - w.a[i]) * cyclotomic_like(w.h - w.b[i]);
    den = den * cyclotomic_like(w.a[i]) * cyclotomic_like(w.b[i]);
  }
  // Cancel the common factor first so the failure certificate is the
  // remainder of the reduced fraction.
  UniPoly g = unipoly_gcd(num, den);
  if (g.degree() > 0) {
    num = unipoly_divide(num, g).first;
    den = unipoly_divide(den, g).first;
  }
  auto [quot, rem] = unipoly_divide(num, den);
  if (rem.is_zero())
    cert.chi = quot;
  else
    cert.remainder = rem;
  return cert;
}

Rational chi_at_one(const WeightTuple& w) {
  Rational r(1);
  for (int i = 0; i < w.n; ++i) {
    r *= Rational(w.h - w.a[i]) * Rational(w.h - w.b[i]);
    r /= Rational(w.a[i]) * Rational(w.b[i]);
  }
  return r;
}

std::vector<WeightTuple> enumerate_regular(int n, int h_max, const EnumerateOptions& opts) {
  if ((n < 1 || n > 3) && !opts.allow_large_n)
    throw std::invalid_argument("enumerate_regular: n must be in 1..3 (guard; see options)");
  if (n < 1) throw std::invalid_argument("enumerate_regular: n must be positive");
  if (h_max < 3) throw std::invalid_argument("enumerate_regular: h_max must be >= 3");

  std::vector<WeightTuple> out;
  // Only W2-compatible tuples can pass check_weight, so the scan runs over
  // nondecreasing a with b_i = h-1-a_i and a_n <= b_n.
  std::vector<int> a(n);
  for (int h = 3; h <= h_max; ++h) {
    int cap = (h - 1) / 2;
    std::function<void(int, int)> rec = [&](int pos, int low) {
      if (pos == n) {
        std::vector<int> b(n);
        for (int i = 0; i < n; ++i) b[i] = h - 1 - a[i];
        WeightTuple w(a, b, h);
        if (check_weight(w).regular()) out.push_back(std::move(w));
        return;
      }
      for (int v = low; v <= cap; ++v) {
        a[pos] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PrefilterResult lemma23_prefilter(const WeightTuple& w) {
  // Block structure of the ascending a-sequence: N strict increases,
  // block sizes J_1..J_{N+1}.
  std::vector<int> block_sizes;
  std::vector<int> block_values;
  for (int i = 0; i < w.n; ++i) {
    if (i == 0 || w.a[i] != w.a[i - 1]) {
      block_sizes.push_back(1);
      block_values.push_back(w.a[i]);
    } else {
      ++block_sizes.back();
    }
  }
  int N = static_cast<int>(block_sizes.size()) - 1;
  int an = w.a[w.n - 1], bn = w.b[w.n - 1];

  if (N == 0) {
    // The three constant-a families.
    int a1 = w.a[0], b1 = w.b[0];
    bool ok = (a1 == 1 && b1 == 1 && w.h == 3) || (a1 == 1 && b1 == 2 && w.h == 4) ||
              (a1 == 2 && b1 == 3 && w.h == 6);
    if (!ok)
      return {false, "constant-a tuple outside the three admissible families"};
    return {true, ""};
  }

  // b-blocks mirror a-blocks under W2; consecutive block values must step
  // by exactly one.
  for (int i = 0; i + 1 <= N; ++i) {
    int step = block_values[i + 1] - block_values[i];
    if (step != 1) {
      std::ostringstream os;
      os << "b-step between blocks " << i + 1 << " and " << i + 2 << " is " << step
         << ", must be 1";
      return {false, os.str()};
    }
  }
  for (int i = 0; i + 1 <= N - 1; ++i) {
    if (block_sizes[i + 1] < block_sizes[i]) {
      std::ostringstream os;
      os << "block sizes decrease: J_" << i + 2 << " < J_" << i + 1;
      return {false, os.str()};
    }
  }
  if (an != bn) {
    if (bn != an + 1) return {false, "a_n != b_n but b_n != a_n + 1"};
    if (block_sizes[N] < block_sizes[N - 1])
      return {false, "a_n != b_n but J_{N+1} < J_N"};
  }
  return {true, ""};
}

HierarchyWeights hierarchy_weights(HierarchyFamily family, int n) {
  if (n < 1) throw std::invalid_argument("hierarchy_weights: n must be positive");
  HierarchyWeights out;
  for (int j = 1; j <= n; ++j) {
    switch (family) {
      case HierarchyFamily::P1: out.qp.emplace_back(2 * j, 2 * n + 3 - 2 * j); break;
      case HierarchyFamily::P21: out.qp.emplace_back(2 * j - 1, 2 * n + 2 - 2 * j); break;
      case HierarchyFamily::P22: out.qp.emplace_back(j, n + 2 - j); break;
      case HierarchyFamily::P4: out.qp.emplace_back(j, n + 1 - j); break;
    }
  }
  for (int i = 1; i <= n; ++i) {
    switch (family) {
      case HierarchyFamily::P1:
        out.z.push_back(2 * n - 2 * i + 4);
        out.H.push_back(2 * n + 2 * i + 2);
        break;
      case HierarchyFamily::P21:
        out.z.push_back(2 * n - 2 * i + 2);
        out.H.push_back(2 * n + 2 * i);
        break;
      case HierarchyFamily::P22:
        out.z.push_back(n - i + 2);
        out.H.push_back(n + i + 2);
        break;
      case HierarchyFamily::P4:
        out.z.push_back(n - i + 1);
        out.H.push_back(n + i + 1);
        break;
    }
  }
  return out;
}

std::vector<std::vector<int>> monomial_basis(const WeightTuple& w, int degree) {
  if (degree < 0) return {};
  std::vector<int> weights;
  for (int i = 0; i < w.n; ++i) weights.push_back(w.a[i]);
  for (int i = 0; i < w.n; ++i) weights.push_back(w.b[i]);
  std::vector<std::vector<int>> out;
  std::vector<int> exps(weights.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
    if (pos == weights.size()) {
      if (remaining == 0) out.push_back(exps);
      return;
    }
    int wgt = weights[pos];
    int maxr = wgt > 0 ? remaining / wgt : 0;
    for (int r = 0; r <= maxr; ++r) {
      exps[pos] = r;
      rec(pos + 1, remaining - r * wgt);
    }
    exps[pos] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kova
