#pragma once

#include "floq/floquet.hpp"
#include "floq/special.hpp"

namespace floq {

using special::MultiIndex;

enum class StateFamily { Fock, Coherent, Pacs };

// Fock:     excitations = {n}, alpha = 0.
// Coherent: alpha = displacement vector, excitations = 0.
// Pacs:     photon-added coherent state, both alpha and excitations {m}.
struct StateSpec {
  StateFamily family = StateFamily::Coherent;
  CVector alpha;
  MultiIndex excitations;

  int n_modes() const { return static_cast<int>(alpha.size()); }

  static StateSpec fock(MultiIndex n);
  static StateSpec coherent(CVector alpha);
  static StateSpec pacs(CVector alpha, MultiIndex m);
};

// Throws ValidationError unless the family invariants hold
// (Fock => alpha = 0, Coherent => excitations = 0, entries >= 0).
void validate(const StateSpec& spec);

enum class Frame { Quadrature, IntegralsOfMotion };

struct CovarianceReport {
  Frame frame = Frame::Quadrature;
  int n_modes = 0;
  CMatrix sigma;            // complex symmetric (IOM) or real symmetric (quadrature)
  double determinant = 0.0; // |det| in the IOM frame, det sigma in quadrature
  double robertson_bound = 0.0; // 2^(-2N)
  double gap = 0.0;             // determinant - bound
  bool intelligent = false;     // |gap| <= 1e-9

  Matrix sigma_real() const { return sigma.real(); }
};

// Covariance matrix of the stacked integrals of motion (Adag_1..N, A_1..N).
// Time-independent; per-mode 2x2 structure, cross-mode entries vanish.
CMatrix covariance_iom(const StateSpec& spec);
CovarianceReport covariance_iom_report(const StateSpec& spec);

// sigma(x) = F(t) e^{iWt} sigma(I) e^{iWt} F^T(t).  The result must be real
// symmetric; entries with imaginary residue above 1e-8 raise
// ImaginaryResidueError.
Matrix transform_covariance(const FloquetDecomposition& decomp, double t,
                            const CMatrix& sigma_iom);

// Closed-form quadrature covariance:
//   Fock:     1/2 F F^dag + F diag({n},{n}) F^dag
//   Coherent: 1/2 F F^dag              (det = 2^(-2N) at every t)
//   Pacs:     explicit Floquet-mode sum (det constant in t)
CovarianceReport covariance_quadrature(const FloquetDecomposition& decomp,
                                       double t, const StateSpec& spec);

// <(q_1..q_N, p_1..p_N)>.  Zero for Fock; Re(F e^{iWt} chi0) with the
// per-mode Laguerre-ratio rescaling of the initial Floquet modes for Pacs.
Vector mean_quadratures(const FloquetDecomposition& decomp, double t,
                        const StateSpec& spec);

// First and second moments of the integrals of motion in a PACS spec.
struct PacsMoments {
  CVector mean_a;           // alpha_i L^1_{m_i}/L_{m_i}
  CVector mean_adag;
  CVector aa_diag;          // alpha_i^2 L^2_{m_i}/L_{m_i}
  CVector adag_adag_diag;
  CVector adag_a_diag;      // |alpha_i|^2 L^1_{m_i}/L_{m_i} + m_i
};
PacsMoments pacs_moments(const StateSpec& spec);

// Robertson diagnostics for a quadrature-frame covariance matrix.
CovarianceReport robertson_report(const Matrix& sigma_quadrature, int n_modes);

}  // namespace floq
