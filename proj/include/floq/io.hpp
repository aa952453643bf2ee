#pragma once

#include <string>

#include "floq/phase_space.hpp"

namespace floq::io {

// "%.17g" with the C locale; all text output flows through this.
std::string format_double(double v);

// Configuration documents (JSON): n_modes, period, steps_per_period, and a
// {constant, harmonics:[{harmonic, cos, sin}]} object per block.  Matrices
// are row-major arrays of arrays.
PeriodicConfiguration parse_configuration(const std::string& text);
std::string serialize_configuration(const PeriodicConfiguration& config);
PeriodicConfiguration load_configuration(const std::string& path);
void save_configuration(const PeriodicConfiguration& config, const std::string& path);

// Decomposition export: monodromy, exponents, stability verdict, invariant
// residuals, optionally the full flt_samples array (large).  Complex numbers
// serialize as [re, im] pairs.
std::string serialize_decomposition(const FloquetDecomposition& decomp,
                                    bool include_flt_samples = false);

// Covariance report document: frame, N, t, row-major matrix, determinant,
// Robertson bound, gap, intelligent flag.
std::string serialize_covariance_report(const CovarianceReport& report, double t);

// Wigner CSV: header q1,..,qN,p1,..,pN,W; one row per grid point, pinned
// coordinates repeated verbatim.
std::string wigner_csv(const PhaseSpaceGrid& grid, int n_modes);

// Metadata sidecar for a Wigner grid.
std::string wigner_sidecar(const StateSpec& spec, double t,
                           const PhaseSpaceGrid& grid,
                           const NegativityStats& stats);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace floq::io
