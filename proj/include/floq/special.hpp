#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "floq/model.hpp"

namespace floq::special {

using floq::CMatrix;
using floq::Complex;
using floq::CVector;

// Documented limit for excitation orders in the state formulas.
inline constexpr int kMaxExcitation = 64;

// Vector of per-mode excitation numbers (m_k or n_k), all >= 0.
struct MultiIndex {
  std::vector<int> entries;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e);
  static MultiIndex zeros(int n);

  int size() const { return static_cast<int>(entries.size()); }
  int order() const;  // |m| = sum of entries
  bool is_zero() const;
  int operator[](int k) const { return entries[k]; }
};

// Associated Laguerre polynomial L_m^a(x) via the three-term recurrence
// in m; L_m^0 = L_m.  Stable for the x <= 0 arguments the state formulas
// produce.
double laguerre(int m, int a, double x);
double laguerre(int m, double x);          // a = 0
Complex laguerre(int m, int a, Complex x); // complex argument (Wigner route)

// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.  Exact while
// below 2^53; throws on overflow past double range.
double pochhammer(int a, int n);

// Kummer confluent hypergeometric 1F1(a, c; x) by direct series with a
// term-ratio stopping criterion of 1e-16; terminates exactly when a is a
// non-positive integer.  Throws ConvergenceError past 10^6 terms.
double confluent_1f1(double a, double c, double x);

// Multidimensional Hermite polynomial H_m^M(z) of a complex symmetric
// matrix M, defined by
//   H_m^M(z) = (-1)^{|m|} e^{z^T M z / 2} d^{|m|}/dz_1^{m_1}...dz_N^{m_N} e^{-z^T M z / 2},
// evaluated by the recurrence
//   H_{m+e_k} = (M z)_k H_m - sum_l M_{kl} m_l H_{m-e_l},  H_0 = 1,
// memoized over the sub-lattice of multi-indices below m.
Complex hermite_multidim(const CMatrix& M, const MultiIndex& m, const CVector& z);

// Both sides of the 2-D reduction
//   H_{(m,m)}^{[[0,1],[1,0]]}(z1, z2) = (-1)^m m! L_m(z1 z2),
// returned as (hermite side, laguerre side) for test comparison.
std::pair<Complex, Complex> hermite_pair_to_laguerre_check(int m, Complex z1,
                                                           Complex z2);

}  // namespace floq::special
