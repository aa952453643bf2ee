#pragma once

#include <optional>

#include "floq/states.hpp"

namespace floq {

inline constexpr std::size_t kMaxGridPoints = 10'000'000;

// One phase-space coordinate: either a sampled axis or pinned to a value.
struct CoordinateSpec {
  static CoordinateSpec axis(double min, double max, int count);
  static CoordinateSpec pinned(double value);

  bool is_pinned = false;
  double value = 0.0;  // pinned coordinate
  double min = 0.0, max = 0.0;
  int count = 0;

  double step() const { return (max - min) / (count - 1); }
};

// Evaluation lattice over (q_1..q_N, p_1..p_N) with optional pinned
// coordinates for slicing, plus sampled Wigner values in row-major order
// over the free axes.
struct PhaseSpaceGrid {
  std::vector<CoordinateSpec> coords;  // size 2N, order q_1..q_N, p_1..p_N
  std::vector<double> samples;         // filled by wigner_pacs

  int n_free() const;
  std::size_t n_points() const;
  double cell_volume() const;  // product of free-axis steps
  // Full 2N-coordinate vector of the flat point index (row-major, free axes).
  Vector point(std::size_t flat_index) const;

  void validate(int n_modes) const;
};

// The classical mode function A(q, p, t): same coefficient rows as the
// integral of motion A(t), applied to a phase-space point.  Linear in (q, p).
CVector classical_mode(const FloquetDecomposition& decomp, double t,
                       const Vector& q, const Vector& p);

// Wigner function of a Fock / coherent / PACS spec at one point,
//   W = 2^N exp(-2|A - alpha|^2) prod_k (-1)^{m_k} L_{m_k}(|2A - alpha|_k^2) / L_{m_k}(-|alpha_k|^2),
// normalized so that the phase-space integral equals (2 pi)^N.
double wigner_value(const FloquetDecomposition& decomp, double t,
                    const StateSpec& spec, const Vector& q, const Vector& p);

// Samples wigner_value over the grid (pure per point; evaluation order is
// data-parallel safe).  Throws GridError past kMaxGridPoints.
PhaseSpaceGrid wigner_pacs(const FloquetDecomposition& decomp, double t,
                           const StateSpec& spec, PhaseSpaceGrid grid);

// Position-representation wavefunction
//   psi_{alpha,m}(q, t) = N_{alpha,m} psi_alpha(q, t) H_m^{M}(U^{-*} q - alpha),
// M = U^dag U^{-T}, with the Gaussian psi_alpha normalized in closed form
// and its constant taken real-positive.
Complex wavefunction_pacs(const FloquetDecomposition& decomp, double t,
                          const StateSpec& spec, const Vector& q);

struct NegativityStats {
  double min_value = 0.0;
  Vector min_location;   // full 2N coordinates
  double negative_mass = 0.0;  // sum_{W<0} |W| cellvol / (2 pi)^N
};

// Minimum sample, its location, and the integrated negative quasi-probability.
NegativityStats negativity_scan(const PhaseSpaceGrid& grid);
NegativityStats negativity_scan(const PhaseSpaceGrid& grid, double cell_volume);

}  // namespace floq
