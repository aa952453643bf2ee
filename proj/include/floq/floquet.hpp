#pragma once

#include <vector>

#include "floq/model.hpp"

namespace floq {

inline constexpr double kStabilityTolerance = 1e-6;

// One-period Floquet data of xdot = Pi(t) x plus the canonical
// Floquet-Lyapunov transformation F(t) sampled on the integration grid
// t_k = k T / steps_per_period, k = 0..steps_per_period.
//
// F(t) = [[U, U*], [V, V*]] in N x N blocks; column j+N is the conjugate
// of column j.  The columns of F(t) e^{iWt}, W = diag(Omega, -Omega), are
// classical solutions, and F satisfies
//   V^T(0) U(0) = (i/2) I          (canonical condition)
//   F(t) J F(t)^T = -i J           (Weyl-Heisenberg algebra)
//   det F(t) = (-i)^N.
// Immutable after build; queries are pure and reentrant.
struct FloquetDecomposition {
  PeriodicConfiguration config;
  Matrix monodromy;                 // Phi(T)
  Vector exponents;                 // omega_j, ascending, in (0, pi/T]
  std::vector<CMatrix> flt_samples; // F(t_k)
  bool stable = false;
  double stability_margin = 0.0;    // max over multipliers of | |lambda| - 1 |

  int n_modes() const { return config.n_modes; }
  double grid_step() const { return config.period / config.steps_per_period; }
  const CMatrix& flt_initial() const { return flt_samples.front(); }

  // W = diag(Omega, -Omega) as a 2N-vector of diagonal entries.
  Vector w_diagonal() const;
};

// Fundamental solution Phi(t_k) of Phidot = Pi(t) Phi, Phi(0) = I, by
// fixed-step classical RK4 on the configuration grid.  Phi(t_k) is
// symplectic to integrator accuracy at every sample.
std::vector<Matrix> fundamental_matrix(const PeriodicConfiguration& config);

struct MonodromyReport {
  Matrix monodromy;
  Vector exponents;
  bool stable = false;
  double stability_margin = 0.0;
};

// Multipliers come in conjugate pairs lambda = e^{i omega T}; exponents are
// quoted once per pair, in the principal band (0, pi/T].  Throws
// DegenerateError for multipliers pinned at +1 or defective eigenspaces.
MonodromyReport monodromy_and_exponents(const PeriodicConfiguration& config);

// Full decomposition.  Throws UnstableError / DegenerateError /
// NormalizationError as described in the struct invariants.
FloquetDecomposition build_flt(const PeriodicConfiguration& config);

enum class FltEval {
  Interpolate,  // periodic reduction + cubic interpolation of flt_samples
  Reintegrate,  // periodic reduction + RK4 from the nearest grid sample
};

// F(t) for arbitrary t (periodic in T).  Grid times are returned exactly.
CMatrix flt_at(const FloquetDecomposition& decomp, double t,
               FltEval method = FltEval::Interpolate);

// Coefficient rows of the linear integrals of motion over x = (q; p):
//   Adag(t) = creation_rows(t) * x,   A(t) = annihilation_rows(t) * x.
// Stacked as (Adag; A) this is (F(t) e^{iWt})^{-1}; the rows are constants
// of motion of the classical flow.
struct IomCoefficients {
  CMatrix creation;      // N x 2N
  CMatrix annihilation;  // N x 2N
  CMatrix stacked() const;
};
IomCoefficients integrals_of_motion_coefficients(const FloquetDecomposition& decomp,
                                                 double t);

}  // namespace floq
