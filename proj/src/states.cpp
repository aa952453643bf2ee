#include "floq/states.hpp"

#include <cmath>
#include <sstream>

namespace floq {

namespace {

constexpr double kResidueTol = 1e-8;
constexpr double kMeanResidueTol = 1e-9;
constexpr double kIntelligentTol = 1e-9;

using special::laguerre;

Matrix real_with_residue_check(const CMatrix& m, double tol, const char* what) {
  const double residue = m.imag().cwiseAbs().maxCoeff();
  if (residue > tol) {
    std::ostringstream msg;
    msg << what << ": imaginary residue " << residue << " exceeds " << tol;
    throw ImaginaryResidueError(msg.str());
  }
  Matrix out = m.real();
  return 0.5 * (out + out.transpose()).eval();
}

// e^{iWt} as a diagonal phase vector over (Omega, -Omega).
CVector mode_phases(const FloquetDecomposition& decomp, double t) {
  const Vector w = decomp.w_diagonal();
  CVector phases(w.size());
  for (int i = 0; i < w.size(); ++i) phases(i) = std::exp(Complex(0.0, w(i) * t));
  return phases;
}

// Per-mode Laguerre ratios of a PACS spec at x_i = -|alpha_i|^2.
struct LaguerreRatios {
  Vector ratio1;  // L^1_m / L_m
  Vector ratio2;  // L^2_m / L_m
  Vector p1;      // ratio1 - ratio1^2
  Vector p2;      // ratio2 - ratio1^2
};

LaguerreRatios laguerre_ratios(const StateSpec& spec) {
  const int n = spec.n_modes();
  LaguerreRatios r{Vector(n), Vector(n), Vector(n), Vector(n)};
  for (int i = 0; i < n; ++i) {
    const int m = spec.excitations[i];
    const double x = -std::norm(spec.alpha(i));
    const double l0 = laguerre(m, 0, x);
    r.ratio1(i) = laguerre(m, 1, x) / l0;
    r.ratio2(i) = laguerre(m, 2, x) / l0;
    r.p1(i) = r.ratio1(i) - r.ratio1(i) * r.ratio1(i);
    r.p2(i) = r.ratio2(i) - r.ratio1(i) * r.ratio1(i);
  }
  return r;
}

void require_stable(const FloquetDecomposition& decomp) {
  if (!decomp.stable) {
    throw UnstableError("quantum constructions require a stable decomposition",
                        decomp.stability_margin);
  }
}

CovarianceReport make_quadrature_report(Matrix sigma, int n_modes) {
  CovarianceReport report;
  report.frame = Frame::Quadrature;
  report.n_modes = n_modes;
  report.sigma = sigma.cast<Complex>();
  report.determinant = sigma.determinant();
  report.robertson_bound = std::pow(2.0, -2.0 * n_modes);
  report.gap = report.determinant - report.robertson_bound;
  report.intelligent = std::abs(report.gap) <= kIntelligentTol;
  return report;
}

}  // namespace

StateSpec StateSpec::fock(MultiIndex n) {
  StateSpec spec;
  spec.family = StateFamily::Fock;
  spec.alpha = CVector::Zero(n.size());
  spec.excitations = std::move(n);
  return spec;
}

StateSpec StateSpec::coherent(CVector alpha) {
  StateSpec spec;
  spec.family = StateFamily::Coherent;
  spec.excitations = MultiIndex::zeros(static_cast<int>(alpha.size()));
  spec.alpha = std::move(alpha);
  return spec;
}

StateSpec StateSpec::pacs(CVector alpha, MultiIndex m) {
  StateSpec spec;
  spec.family = StateFamily::Pacs;
  spec.alpha = std::move(alpha);
  spec.excitations = std::move(m);
  return spec;
}

void validate(const StateSpec& spec) {
  if (spec.alpha.size() == 0) throw ValidationError("state spec: empty alpha vector");
  if (spec.excitations.size() != spec.n_modes()) {
    throw ValidationError("state spec: alpha and excitations sizes differ");
  }
  if (!spec.alpha.allFinite()) throw ValidationError("state spec: non-finite alpha");
  for (int v : spec.excitations.entries) {
    if (v < 0) throw ValidationError("state spec: negative excitation");
  }
  if (spec.family == StateFamily::Fock && spec.alpha.cwiseAbs().maxCoeff() != 0.0) {
    throw ValidationError("Fock spec must carry a zero displacement");
  }
  if (spec.family == StateFamily::Coherent && !spec.excitations.is_zero()) {
    throw ValidationError("coherent spec must carry zero excitations");
  }
}

CMatrix covariance_iom(const StateSpec& spec) {
  validate(spec);
  const int n = spec.n_modes();
  CMatrix sigma = CMatrix::Zero(2 * n, 2 * n);

  switch (spec.family) {
    case StateFamily::Fock:
    case StateFamily::Coherent:
      // [[0, diag(n) + I/2], [diag(n) + I/2, 0]]; n = 0 for coherent states,
      // whose covariances are displacement-invariant by construction.
      for (int i = 0; i < n; ++i) {
        const double d = spec.excitations[i] + 0.5;
        sigma(i, i + n) = d;
        sigma(i + n, i) = d;
      }
      break;
    case StateFamily::Pacs: {
      const LaguerreRatios r = laguerre_ratios(spec);
      for (int i = 0; i < n; ++i) {
        const Complex a = spec.alpha(i);
        const double abs2 = std::norm(a);
        sigma(i, i) = std::conj(a) * std::conj(a) * r.p2(i);
        sigma(i + n, i + n) = a * a * r.p2(i);
        const double cross = abs2 * r.p1(i) + spec.excitations[i] + 0.5;
        sigma(i, i + n) = cross;
        sigma(i + n, i) = cross;
      }
      break;
    }
  }
  return sigma;
}

CovarianceReport covariance_iom_report(const StateSpec& spec) {
  CovarianceReport report;
  report.frame = Frame::IntegralsOfMotion;
  report.n_modes = spec.n_modes();
  report.sigma = covariance_iom(spec);
  report.determinant = std::abs(report.sigma.determinant());  // magnitude convention
  report.robertson_bound = std::pow(2.0, -2.0 * report.n_modes);
  report.gap = report.determinant - report.robertson_bound;
  report.intelligent = std::abs(report.gap) <= kIntelligentTol;
  return report;
}

Matrix transform_covariance(const FloquetDecomposition& decomp, double t,
                            const CMatrix& sigma_iom) {
  const int n = decomp.n_modes();
  if (sigma_iom.rows() != 2 * n || sigma_iom.cols() != 2 * n) {
    throw ValidationError("transform_covariance: dimension mismatch");
  }
  const CMatrix f = flt_at(decomp, t);
  const CVector phases = mode_phases(decomp, t);
  const CMatrix g = f * phases.asDiagonal();
  const CMatrix sigma_x = g * sigma_iom * g.transpose();
  return real_with_residue_check(sigma_x, kResidueTol, "transform_covariance");
}

CovarianceReport covariance_quadrature(const FloquetDecomposition& decomp,
                                       double t, const StateSpec& spec) {
  require_stable(decomp);
  validate(spec);
  const int n = decomp.n_modes();
  if (spec.n_modes() != n) {
    throw ValidationError("covariance_quadrature: spec/decomposition mode mismatch");
  }

  const CMatrix f = flt_at(decomp, t);
  Matrix sigma;
  switch (spec.family) {
    case StateFamily::Coherent:
      sigma = real_with_residue_check(0.5 * f * f.adjoint(), kResidueTol,
                                      "coherent covariance");
      break;
    case StateFamily::Fock: {
      Vector n2(2 * n);
      for (int i = 0; i < n; ++i) {
        n2(i) = spec.excitations[i];
        n2(i + n) = spec.excitations[i];
      }
      const CMatrix fock =
          0.5 * f * f.adjoint() + f * n2.cast<Complex>().asDiagonal() * f.adjoint();
      sigma = real_with_residue_check(fock, kResidueTol, "Fock covariance");
      break;
    }
    case StateFamily::Pacs: {
      // Explicit Floquet-mode sum; the second summand's state factors are
      // indexed by the summation mode k (the paper's i is a typo).
      const LaguerreRatios r = laguerre_ratios(spec);
      const CVector phases = mode_phases(decomp, t);
      CVector chi(2 * n);
      for (int k = 0; k < n; ++k) {
        chi(k) = std::conj(spec.alpha(k)) * phases(k);
        chi(k + n) = spec.alpha(k) * phases(k + n);
      }
      CMatrix acc = CMatrix::Zero(2 * n, 2 * n);
      for (int k = 0; k < 2 * n; ++k) {
        const int mode = k % n;
        acc += (chi(k) * chi(k) * r.p2(mode)) * (f.col(k) * f.col(k).transpose());
      }
      for (int k = 0; k < n; ++k) {
        const double cross =
            std::norm(spec.alpha(k)) * r.p1(k) + spec.excitations[k] + 0.5;
        acc += cross * (f.col(k) * f.col(k + n).transpose() +
                        f.col(k + n) * f.col(k).transpose());
      }
      sigma = real_with_residue_check(acc, kResidueTol, "PACS covariance");
      break;
    }
  }
  return make_quadrature_report(std::move(sigma), n);
}

Vector mean_quadratures(const FloquetDecomposition& decomp, double t,
                        const StateSpec& spec) {
  require_stable(decomp);
  validate(spec);
  const int n = decomp.n_modes();
  if (spec.n_modes() != n) {
    throw ValidationError("mean_quadratures: spec/decomposition mode mismatch");
  }
  if (spec.family == StateFamily::Fock) return Vector::Zero(2 * n);

  Vector ratio = Vector::Ones(n);
  if (spec.family == StateFamily::Pacs) ratio = laguerre_ratios(spec).ratio1;

  CVector chi0(2 * n);
  for (int k = 0; k < n; ++k) {
    chi0(k) = std::conj(spec.alpha(k)) * ratio(k);
    chi0(k + n) = spec.alpha(k) * ratio(k);
  }
  const CMatrix f = flt_at(decomp, t);
  const CVector phases = mode_phases(decomp, t);
  const CVector x = f * (phases.asDiagonal() * chi0);

  const double residue = x.imag().cwiseAbs().maxCoeff();
  if (residue > kMeanResidueTol) {
    std::ostringstream msg;
    msg << "mean_quadratures: imaginary residue " << residue;
    throw ImaginaryResidueError(msg.str());
  }
  return x.real();
}

PacsMoments pacs_moments(const StateSpec& spec) {
  if (spec.family != StateFamily::Pacs) {
    throw ValidationError("pacs_moments requires a PACS spec");
  }
  validate(spec);
  const int n = spec.n_modes();
  const LaguerreRatios r = laguerre_ratios(spec);

  PacsMoments out;
  out.mean_a = CVector(n);
  out.mean_adag = CVector(n);
  out.aa_diag = CVector(n);
  out.adag_adag_diag = CVector(n);
  out.adag_a_diag = CVector(n);
  for (int i = 0; i < n; ++i) {
    const Complex a = spec.alpha(i);
    out.mean_a(i) = a * r.ratio1(i);
    out.mean_adag(i) = std::conj(a) * r.ratio1(i);
    out.aa_diag(i) = a * a * r.ratio2(i);
    out.adag_adag_diag(i) = std::conj(a) * std::conj(a) * r.ratio2(i);
    out.adag_a_diag(i) = std::norm(a) * r.ratio1(i) + spec.excitations[i];
  }
  return out;
}

CovarianceReport robertson_report(const Matrix& sigma_quadrature, int n_modes) {
  if (sigma_quadrature.rows() != 2 * n_modes ||
      sigma_quadrature.cols() != 2 * n_modes) {
    throw ValidationError("robertson_report: dimension mismatch");
  }
  const double scale = std::max(1.0, sigma_quadrature.cwiseAbs().maxCoeff());
  if ((sigma_quadrature - sigma_quadrature.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * scale) {
    throw ValidationError("robertson_report: input must be symmetric");
  }
  return make_quadrature_report(sigma_quadrature, n_modes);
}

}  // namespace floq
