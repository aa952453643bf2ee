#pragma once

#include <Eigen/Dense>
#include <vector>

#include "floq/errors.hpp"

namespace floq {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Canonical symplectic form J = [[0, I], [-I, 0]] for N modes.
Matrix symplectic_form(int n_modes);

// Real N x N matrix-valued truncated Fourier series,
//   B(t) = B0 + sum_k [ Ck cos(2 pi k t / T) + Sk sin(2 pi k t / T) ],
// with distinct positive harmonic indices k.
struct FourierMatrix {
  struct Harmonic {
    int index = 1;
    Matrix cos_coeff;
    Matrix sin_coeff;
  };

  Matrix constant;
  std::vector<Harmonic> harmonics;

  static FourierMatrix constant_matrix(Matrix value);

  Matrix evaluate(double t, double period) const;
  bool is_symmetric(double tol) const;
  FourierMatrix symmetrized() const;
};

// Time-periodic quadratic Hamiltonian H(t) = 1/2 x^T S(t) x over
// x = (q_1..q_N, p_1..p_N), with
//   S(t) = [[k_qq, k_qp], [k_qp^T, k_pp]]
// and all blocks given as truncated Fourier series sharing one period.
// Immutable after construction; all queries are pure.
struct PeriodicConfiguration {
  int n_modes = 0;
  double period = 0.0;
  int steps_per_period = 0;
  FourierMatrix k_qq;  // stiffness block, symmetric
  FourierMatrix k_pp;  // inverse-mass block, symmetric
  FourierMatrix k_qp;  // position-momentum coupling

  // S(t), the symmetric 2N x 2N Hamiltonian matrix.
  Matrix hamiltonian_matrix(double t) const;

  // Pi(t) = J S(t): the coefficient matrix of xdot = Pi(t) x.
  // Satisfies Pi^T J + J Pi = 0 at every t.
  Matrix dynamical_matrix(double t) const;
};

inline constexpr int kDefaultStepsPerPeriod = 4096;

// Validates dimensions and symmetry (relative tolerance 1e-12 on k_qq and
// k_pp; offending blocks are rejected, passing ones are symmetrized).
PeriodicConfiguration build_configuration(int n_modes, double period,
                                          FourierMatrix k_qq,
                                          FourierMatrix k_pp,
                                          FourierMatrix k_qp,
                                          int steps_per_period = kDefaultStepsPerPeriod);

// Two coupled Mathieu oscillators:
//   k_qq(t) = diag(a1, a2) - 2 q_drive cos(2 pi t / T) I + coupling * offdiag(1),
//   k_pp = I, k_qp = 0.
PeriodicConfiguration preset_mathieu_pair(double a1, double a2, double q_drive,
                                          double coupling, double period,
                                          int steps_per_period = kDefaultStepsPerPeriod);

}  // namespace floq
