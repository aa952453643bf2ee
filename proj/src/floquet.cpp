#include "floq/floquet.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace floq {

namespace {

constexpr double kImagTol = 1e-9;       // |Im lambda| below this counts as real
constexpr double kGroupTol = 1e-7;      // eigenvalue clustering tolerance
constexpr double kNormalizationTol = 1e-12;

// Hermitian symplectic form s(x, y) = x^dag (iJ) y.  Canonical principal
// columns carry s(w, w) = -1 (Krein sign); the conjugate columns carry +1.
Complex s_form(const CMatrix& j, const CVector& x, const CVector& y) {
  return Complex(0.0, 1.0) * (x.adjoint() * (j * y))(0, 0);
}

struct ModeColumn {
  CVector column;   // canonical column of F(0)
  double omega;     // Floquet exponent
};

}  // namespace

Vector FloquetDecomposition::w_diagonal() const {
  const int n = n_modes();
  Vector w(2 * n);
  w.head(n) = exponents;
  w.tail(n) = -exponents;
  return w;
}

std::vector<Matrix> fundamental_matrix(const PeriodicConfiguration& config) {
  const int dim = 2 * config.n_modes;
  const int steps = config.steps_per_period;
  const double h = config.period / steps;

  std::vector<Matrix> out;
  out.reserve(steps + 1);
  Matrix phi = Matrix::Identity(dim, dim);
  out.push_back(phi);

  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const Matrix pi0 = config.dynamical_matrix(t);
    const Matrix pih = config.dynamical_matrix(t + 0.5 * h);
    const Matrix pi1 = config.dynamical_matrix(t + h);

    const Matrix k1 = pi0 * phi;
    const Matrix k2 = pih * (phi + (0.5 * h) * k1);
    const Matrix k3 = pih * (phi + (0.5 * h) * k2);
    const Matrix k4 = pi1 * (phi + h * k3);
    phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (!phi.allFinite()) {
      std::ostringstream msg;
      msg << "fundamental_matrix: non-finite values at step " << k + 1 << " (t = "
          << t + h << ")";
      throw Error(msg.str());
    }
    out.push_back(phi);
  }
  return out;
}

namespace {

struct EigenData {
  CVector values;
  CMatrix vectors;
  double margin = 0.0;
};

EigenData monodromy_eigen(const Matrix& monodromy) {
  Eigen::EigenSolver<Matrix> solver(monodromy);
  if (solver.info() != Eigen::Success) {
    throw Error("monodromy eigendecomposition failed");
  }
  EigenData data;
  data.values = solver.eigenvalues();
  data.vectors = solver.eigenvectors();
  data.margin = 0.0;
  for (int i = 0; i < data.values.size(); ++i) {
    data.margin = std::max(data.margin, std::abs(std::abs(data.values(i)) - 1.0));
  }
  return data;
}

// Clusters of equal multipliers among the principal candidates.  Each group
// carries the indices of every eigenvalue in the cluster.
struct MultiplierGroup {
  Complex lambda;            // representative value
  std::vector<int> indices;  // eigenvalue indices in the cluster
  bool real_negative = false;
};

std::vector<MultiplierGroup> group_principal_multipliers(const CVector& values) {
  const int dim = static_cast<int>(values.size());
  std::vector<MultiplierGroup> groups;
  std::vector<bool> used(dim, false);

  auto assign = [&](int i, bool negative_real) {
    for (auto& g : groups) {
      if (g.real_negative == negative_real &&
          std::abs(g.lambda - values(i)) <= kGroupTol) {
        g.indices.push_back(i);
        used[i] = true;
        return;
      }
    }
    MultiplierGroup g;
    g.lambda = values(i);
    g.real_negative = negative_real;
    g.indices.push_back(i);
    groups.push_back(std::move(g));
    used[i] = true;
  };

  for (int i = 0; i < dim; ++i) {
    const Complex lam = values(i);
    if (std::abs(lam.imag()) <= kImagTol) {
      if (lam.real() > 0.0) {
        throw DegenerateError(
            "multiplier at +1: zero Floquet exponent (resonant period)");
      }
      assign(i, true);  // lambda = -1 band edge, conjugate pair coincides
    } else if (lam.imag() > 0.0) {
      assign(i, false);
    }
    // Im < 0 members are recovered by conjugation.
  }
  return groups;
}

// Negative-Krein-subspace basis of one multiplier group.  For complex
// multipliers the whole eigenspace must sit on one side of the form; for
// real negative multipliers (band edge) the eigenspace splits evenly.
std::vector<CVector> krein_select(const CMatrix& j, const CMatrix& vectors,
                                  MultiplierGroup& group) {
  const int d = static_cast<int>(group.indices.size());
  CMatrix basis(vectors.rows(), d);
  for (int a = 0; a < d; ++a) basis.col(a) = vectors.col(group.indices[a]);

  // Hermitian Gram matrix of s over the group's eigenspace.
  CMatrix gram(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      gram(a, b) = s_form(j, basis.col(a), basis.col(b));
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> gram_eigen(gram);
  const Vector signature = gram_eigen.eigenvalues();

  int negatives = 0;
  for (int a = 0; a < d; ++a) {
    if (signature(a) < -kNormalizationTol) {
      ++negatives;
    } else if (signature(a) <= kNormalizationTol) {
      throw DegenerateError("defective eigenspace: singular symplectic Gram matrix");
    }
  }

  int expected = d;
  if (group.real_negative) {
    if (d % 2 != 0) {
      throw DegenerateError("band-edge multiplier with odd eigenspace dimension");
    }
    expected = d / 2;
  } else if (negatives == 0) {
    // Negative-Krein mode: the canonical column lives in the conjugate
    // eigenspace.  Conjugating the basis flips the form's sign.
    basis = basis.conjugate();
    group.lambda = std::conj(group.lambda);
    negatives = d;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        gram(a, b) = s_form(j, basis.col(a), basis.col(b));
      }
    }
    gram_eigen.compute(gram);
  }

  if (negatives != expected) {
    throw DegenerateError("Krein-indefinite eigenspace: mixed signature multiplier");
  }

  std::vector<CVector> out;
  out.reserve(expected);
  for (int a = 0; a < d; ++a) {
    if (gram_eigen.eigenvalues()(a) < 0.0) {
      out.push_back(basis * gram_eigen.eigenvectors().col(a));
      if (static_cast<int>(out.size()) == expected) break;
    }
  }
  return out;
}

// Gram-Schmidt on the s-form (restricted negative definite): s(w_a, w_b)
// becomes -delta_ab; this enforces the Weyl-Heisenberg block structure.
void s_orthonormalize(const CMatrix& j, std::vector<CVector>& ws) {
  for (std::size_t a = 0; a < ws.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      ws[a] -= ws[b] * (s_form(j, ws[b], ws[a]) / s_form(j, ws[b], ws[b]));
    }
    const double norm2 = -s_form(j, ws[a], ws[a]).real();
    if (norm2 <= kNormalizationTol) {
      throw DegenerateError("eigenspace orthogonalization collapsed");
    }
    ws[a] /= std::sqrt(norm2);
  }
}

// Phase convention + canonical condition.  The vector arrives s-normalized
// (WH modulus already right); the principal square root of i/(2 v^T u)
// supplies the phase, which on time-reversal-symmetric configurations is
// exactly the full canonical rescaling.
CVector canonical_phase(const CVector& w_in, int n) {
  CVector w = w_in;
  int peak = 0;
  double best = -1.0;
  for (int i = 0; i < w.size(); ++i) {
    const double mag = std::abs(w(i));
    if (mag > best + 1e-15) {
      best = mag;
      peak = i;
    }
  }
  w *= std::abs(w(peak)) / w(peak);

  // Plain bilinear v^T u over the column's (u; v) halves.
  const Complex vtu = w.tail(n).cwiseProduct(w.head(n)).sum();
  if (std::abs(vtu) < kNormalizationTol) {
    throw NormalizationError(
        "cannot impose the canonical condition: v^T u vanishes");
  }
  Complex c = std::sqrt(Complex(0.0, 1.0) / (2.0 * vtu));
  c /= std::abs(c);
  return c * w;
}

// Tie-break for equal exponents: lexicographic on |entries|.
bool column_less(const CVector& a, const CVector& b) {
  for (int i = 0; i < a.size(); ++i) {
    const double ma = std::abs(a(i));
    const double mb = std::abs(b(i));
    if (std::abs(ma - mb) > 1e-12) return ma < mb;
  }
  return false;
}

std::vector<ModeColumn> canonical_columns(const Matrix& monodromy, double period) {
  const int dim = static_cast<int>(monodromy.rows());
  const int n = dim / 2;
  const CMatrix j = symplectic_form(n).cast<Complex>();

  EigenData eigen = monodromy_eigen(monodromy);
  if (eigen.margin > kStabilityTolerance) {
    std::ostringstream msg;
    msg << "unstable configuration: multiplier margin " << eigen.margin;
    throw UnstableError(msg.str(), eigen.margin);
  }

  auto groups = group_principal_multipliers(eigen.values);
  std::vector<ModeColumn> columns;
  columns.reserve(n);
  for (auto& group : groups) {
    auto basis = krein_select(j, eigen.vectors, group);
    s_orthonormalize(j, basis);
    double omega;
    if (group.real_negative) {
      omega = M_PI / period;
    } else {
      double ang = std::arg(group.lambda);
      if (ang <= 0.0) ang += 2.0 * M_PI;  // negative-Krein modes land in (pi, 2 pi)
      omega = ang / period;
    }
    for (auto& w : basis) {
      columns.push_back({canonical_phase(w, n), omega});
    }
  }
  if (static_cast<int>(columns.size()) != n) {
    throw DegenerateError("defective monodromy: incomplete eigenvector set");
  }

  std::sort(columns.begin(), columns.end(), [](const ModeColumn& a, const ModeColumn& b) {
    if (std::abs(a.omega - b.omega) > 1e-12) return a.omega < b.omega;
    return column_less(a.column, b.column);
  });
  return columns;
}

CMatrix flt_initial_from_columns(const std::vector<ModeColumn>& columns) {
  const int n = static_cast<int>(columns.size());
  CMatrix f0(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    f0.col(k) = columns[k].column;
    f0.col(k + n) = columns[k].column.conjugate();
  }
  return f0;
}

CVector unit_phases(const Vector& w_diag, double t) {
  CVector phases(w_diag.size());
  for (int i = 0; i < w_diag.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, w_diag(i) * t));
  }
  return phases;
}

}  // namespace

MonodromyReport monodromy_and_exponents(const PeriodicConfiguration& config) {
  MonodromyReport report;
  report.monodromy = fundamental_matrix(config).back();

  EigenData eigen = monodromy_eigen(report.monodromy);
  report.stability_margin = eigen.margin;
  report.stable = eigen.margin <= kStabilityTolerance;
  if (!report.stable) {
    report.exponents = Vector();
    return report;
  }

  auto columns = canonical_columns(report.monodromy, config.period);
  report.exponents = Vector(columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    report.exponents(static_cast<int>(k)) = columns[k].omega;
  }
  return report;
}

FloquetDecomposition build_flt(const PeriodicConfiguration& config) {
  FloquetDecomposition decomp;
  decomp.config = config;

  const auto phi = fundamental_matrix(config);
  decomp.monodromy = phi.back();

  auto columns = canonical_columns(decomp.monodromy, config.period);
  const int n = config.n_modes;
  decomp.exponents = Vector(n);
  for (int k = 0; k < n; ++k) decomp.exponents(k) = columns[k].omega;

  EigenData eigen = monodromy_eigen(decomp.monodromy);
  decomp.stability_margin = eigen.margin;
  decomp.stable = true;

  const CMatrix f0 = flt_initial_from_columns(columns);

  // Completeness check: the canonical construction must reproduce the
  // Weyl-Heisenberg algebra at t = 0.
  const Matrix j = symplectic_form(n);
  const CMatrix wh = f0 * j.cast<Complex>() * f0.transpose() + Complex(0.0, 1.0) * j;
  if (wh.cwiseAbs().maxCoeff() > 1e-9) {
    throw DegenerateError("canonical construction failed the algebra check");
  }

  const Vector w_diag = decomp.w_diagonal();
  const double h = config.period / config.steps_per_period;
  decomp.flt_samples.reserve(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const CVector phases = unit_phases(w_diag, -static_cast<double>(k) * h);
    decomp.flt_samples.push_back(phi[k] * (f0 * phases.asDiagonal()));
  }
  return decomp;
}

namespace {

double periodic_reduce(double t, double period) {
  double tm = std::fmod(t, period);
  if (tm < 0.0) tm += period;
  return tm;
}

CMatrix reintegrate_flt(const FloquetDecomposition& decomp, double tm) {
  const auto& config = decomp.config;
  const double h = decomp.grid_step();
  const int k0 = std::min(static_cast<int>(tm / h),
                          config.steps_per_period - 1);
  const double t0 = k0 * h;
  const double span = tm - t0;

  CMatrix f = decomp.flt_samples[k0];
  if (span <= 0.0) return f;

  // F solves Fdot = Pi(t) F - i F W.
  const Vector w_diag = decomp.w_diagonal();
  const CMatrix iw = (Complex(0.0, 1.0) * w_diag.cast<Complex>()).asDiagonal();
  const int substeps = std::max(1, static_cast<int>(std::ceil(span / h * 4.0)));
  const double hs = span / substeps;
  double t = t0;
  auto rhs = [&](double time, const CMatrix& value) -> CMatrix {
    return config.dynamical_matrix(time).cast<Complex>() * value - value * iw;
  };
  for (int s = 0; s < substeps; ++s) {
    const CMatrix k1 = rhs(t, f);
    const CMatrix k2 = rhs(t + 0.5 * hs, f + (0.5 * hs) * k1);
    const CMatrix k3 = rhs(t + 0.5 * hs, f + (0.5 * hs) * k2);
    const CMatrix k4 = rhs(t + hs, f + hs * k3);
    f += (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += hs;
  }
  return f;
}

}  // namespace

CMatrix flt_at(const FloquetDecomposition& decomp, double t, FltEval method) {
  const double period = decomp.config.period;
  const int steps = decomp.config.steps_per_period;
  const double h = decomp.grid_step();
  const double tm = periodic_reduce(t, period);

  const double x = tm / h;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) {
    int k = static_cast<int>(nearest) % steps;
    return decomp.flt_samples[k];
  }

  if (method == FltEval::Reintegrate) return reintegrate_flt(decomp, tm);

  // Catmull-Rom through the four bracketing periodic samples.
  const int k0 = static_cast<int>(std::floor(x));
  const double s = x - k0;
  auto sample = [&](int k) -> const CMatrix& {
    int idx = ((k % steps) + steps) % steps;
    return decomp.flt_samples[idx];
  };
  const CMatrix& pm1 = sample(k0 - 1);
  const CMatrix& p0 = sample(k0);
  const CMatrix& p1 = sample(k0 + 1);
  const CMatrix& p2 = sample(k0 + 2);

  return 0.5 * ((2.0 * p0) + (p1 - pm1) * s +
                (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2) * (s * s) +
                (3.0 * p0 - pm1 - 3.0 * p1 + p2) * (s * s * s));
}

CMatrix IomCoefficients::stacked() const {
  CMatrix out(creation.rows() + annihilation.rows(), creation.cols());
  out.topRows(creation.rows()) = creation;
  out.bottomRows(annihilation.rows()) = annihilation;
  return out;
}

IomCoefficients integrals_of_motion_coefficients(const FloquetDecomposition& decomp,
                                                 double t) {
  const int n = decomp.n_modes();
  const CMatrix f = flt_at(decomp, t);
  const CMatrix u = f.topLeftCorner(n, n);
  const CMatrix v = f.bottomLeftCorner(n, n);

  // Closed-form inverse from the canonical structure:
  //   F^{-1} = [[ i V^dag, -i U^dag], [-i V^T, i U^T]],
  // then C(t) = e^{-iWt} F^{-1}(t).
  const Complex i_unit(0.0, 1.0);
  CMatrix finv(2 * n, 2 * n);
  finv.topLeftCorner(n, n) = i_unit * v.adjoint();
  finv.topRightCorner(n, n) = -i_unit * u.adjoint();
  finv.bottomLeftCorner(n, n) = -i_unit * v.transpose();
  finv.bottomRightCorner(n, n) = i_unit * u.transpose();

  IomCoefficients out;
  CVector phase_up = unit_phases(-decomp.exponents, t);   // e^{-i Omega t}
  CVector phase_dn = unit_phases(decomp.exponents, t);    // e^{+i Omega t}
  out.creation = phase_up.asDiagonal() * finv.topRows(n);
  out.annihilation = phase_dn.asDiagonal() * finv.bottomRows(n);
  return out;
}

}  // namespace floq
