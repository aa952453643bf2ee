#include "floq/special.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace floq::special {

MultiIndex::MultiIndex(std::vector<int> e) : entries(std::move(e)) {
  for (int v : entries) {
    if (v < 0) throw ValidationError("MultiIndex entries must be non-negative");
    if (v > kMaxExcitation) {
      std::ostringstream msg;
      msg << "excitation " << v << " exceeds the supported maximum "
          << kMaxExcitation;
      throw ValidationError(msg.str());
    }
  }
}

MultiIndex MultiIndex::zeros(int n) {
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0));
}

int MultiIndex::order() const {
  int total = 0;
  for (int v : entries) total += v;
  return total;
}

bool MultiIndex::is_zero() const { return order() == 0; }

namespace {

// Three-term recurrence (m+1) L_{m+1}^a = (2m+a+1-x) L_m^a - (m+a) L_{m-1}^a.
template <typename Scalar>
Scalar laguerre_recurrence(int m, int a, Scalar x) {
  if (m == 0) return Scalar(1);
  Scalar prev = Scalar(1);                       // L_0^a
  Scalar curr = Scalar(1 + a) - x;               // L_1^a
  for (int k = 1; k < m; ++k) {
    Scalar next = ((Scalar(2 * k + a + 1) - x) * curr - Scalar(k + a) * prev) /
                  Scalar(k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace

double laguerre(int m, int a, double x) {
  if (m < 0 || a < 0) throw ValidationError("laguerre: m and a must be >= 0");
  if (m > kMaxExcitation) throw ValidationError("laguerre: order exceeds supported maximum");
  if (!std::isfinite(x)) throw ValidationError("laguerre: non-finite argument");
  return laguerre_recurrence<double>(m, a, x);
}

double laguerre(int m, double x) { return laguerre(m, 0, x); }

Complex laguerre(int m, int a, Complex x) {
  if (m < 0 || a < 0) throw ValidationError("laguerre: m and a must be >= 0");
  return laguerre_recurrence<Complex>(m, a, x);
}

double pochhammer(int a, int n) {
  if (n < 0) throw ValidationError("pochhammer: n must be >= 0");
  double out = 1.0;
  for (int k = 0; k < n; ++k) {
    out *= static_cast<double>(a) + k;
    if (!std::isfinite(out)) {
      throw ValidationError("pochhammer: overflow past double range");
    }
  }
  return out;
}

double confluent_1f1(double a, double c, double x) {
  if (c <= 0.0 && c == std::floor(c)) {
    throw ValidationError("confluent_1f1: c must not be a non-positive integer");
  }
  const bool terminating = (a <= 0.0 && a == std::floor(a));
  const long n_terms_exact = terminating ? static_cast<long>(-a) : -1;

  double term = 1.0;
  double sum = 1.0;
  constexpr double kRatioStop = 1e-16;
  constexpr long kMaxTerms = 1'000'000;
  for (long n = 0; n < kMaxTerms; ++n) {
    if (terminating && n == n_terms_exact) return sum;
    term *= (a + n) / (c + n) * x / (n + 1);
    sum += term;
    if (!terminating && std::abs(term) <= kRatioStop * std::abs(sum)) return sum;
  }
  if (terminating) return sum;
  throw ConvergenceError("confluent_1f1: series did not converge in 1e6 terms");
}

namespace {

constexpr double kHermiteSymTol = 1e-12;

// Lattice walk for H_m^M(z): descend one excitation at a time, memoizing on
// the multi-index.  The lattice below m has prod(m_k + 1) nodes.
class HermiteEvaluator {
 public:
  HermiteEvaluator(const CMatrix& m_mat, const CVector& z)
      : m_mat_(m_mat), mz_(m_mat * z), n_(static_cast<int>(z.size())) {}

  Complex value(std::vector<int> idx) {
    auto found = cache_.find(idx);
    if (found != cache_.end()) return found->second;

    int k = -1;
    for (int i = 0; i < n_; ++i) {
      if (idx[i] > 0) {
        k = i;
        break;
      }
    }
    if (k < 0) return Complex(1.0);  // H_0 = 1

    // H_idx = (Mz)_k H_{idx-e_k} - sum_l M_{kl} (idx-e_k)_l H_{idx-e_k-e_l}
    std::vector<int> base = idx;
    base[k] -= 1;
    Complex out = mz_(k) * value(base);
    for (int l = 0; l < n_; ++l) {
      if (base[l] == 0) continue;
      std::vector<int> lower = base;
      lower[l] -= 1;
      out -= m_mat_(k, l) * static_cast<double>(base[l]) * value(lower);
    }
    cache_.emplace(std::move(idx), out);
    return out;
  }

 private:
  const CMatrix& m_mat_;
  CVector mz_;
  int n_;
  std::map<std::vector<int>, Complex> cache_;
};

}  // namespace

Complex hermite_multidim(const CMatrix& M, const MultiIndex& m, const CVector& z) {
  const int n = static_cast<int>(z.size());
  if (M.rows() != n || M.cols() != n) {
    throw ValidationError("hermite_multidim: dimension mismatch");
  }
  if (m.size() != n) {
    throw ValidationError("hermite_multidim: multi-index dimension mismatch");
  }
  const double scale = M.cwiseAbs().maxCoeff();
  if (scale > 0.0 &&
      (M - M.transpose()).cwiseAbs().maxCoeff() > kHermiteSymTol * scale) {
    throw ValidationError("hermite_multidim: M must be symmetric");
  }
  HermiteEvaluator eval(M, z);
  return eval.value(m.entries);
}

std::pair<Complex, Complex> hermite_pair_to_laguerre_check(int m, Complex z1,
                                                           Complex z2) {
  if (m < 0) throw ValidationError("hermite_pair_to_laguerre_check: m >= 0 required");
  CMatrix pauli_x(2, 2);
  pauli_x << 0.0, 1.0, 1.0, 0.0;
  CVector z(2);
  z << z1, z2;
  Complex hermite_side =
      hermite_multidim(pauli_x, MultiIndex({m, m}), z);

  double factorial = 1.0;
  for (int k = 2; k <= m; ++k) factorial *= k;
  Complex laguerre_side =
      std::pow(-1.0, m) * factorial * laguerre(m, 0, z1 * z2);
  return {hermite_side, laguerre_side};
}

}  // namespace floq::special
