#pragma once

#include "floq/states.hpp"

namespace floq::oracle {

inline constexpr std::size_t kMaxOracleDim = 1'000'000;

// Truncated-Fock ladder operators a_i, a_i^dag on (C^D)^{tensor N}, built by
// Kronecker products with mode 1 as the slowest-varying factor.  The
// commutator [a_i, a_j^dag] = delta_ij I holds exactly off the top
// occupation shell; the (D-1, D-1) diagonal entry carries the known 1-D
// truncation artifact.
struct TruncatedLadder {
  int n_modes = 0;
  int dim = 0;                    // per-mode truncation D
  std::vector<CMatrix> lowering;  // a_i, D^N x D^N

  CMatrix raising(int i) const { return lowering[i].adjoint(); }
  std::size_t total_dim() const { return lowering.empty() ? 0 : lowering[0].rows(); }
};

TruncatedLadder build_truncated_ladder(int n_modes, int dim);

struct OracleState {
  CVector vector;            // unit norm
  double norm2_before = 1.0; // squared norm before the final renormalization;
                             // for PACS this equals prod m_k! L_{m_k}(-|alpha_k|^2)
  double top_shell_population = 0.0;
};

// Builds the spec's state by displacement (matrix exponential of
// alpha a^dag - alpha^* a, factorized per mode) and repeated raising,
// in the stationary frame where A(0) coincides with a.
OracleState oracle_state(const TruncatedLadder& ladder, const StateSpec& spec);

// All first and second moments by direct contraction, plus quadrature
// moments for q = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)).
struct OracleMoments {
  CVector mean_a, mean_adag;
  CMatrix aa, adag_adag, adag_a, a_adag;  // N x N second moments
  CMatrix sigma_iom;   // 2N x 2N covariance of (Adag; A)
  Vector mean_x;       // 2N quadrature means
  Matrix sigma_x;      // 2N x 2N quadrature covariance
};

OracleMoments oracle_moments(const TruncatedLadder& ladder, const CVector& state);

}  // namespace floq::oracle
